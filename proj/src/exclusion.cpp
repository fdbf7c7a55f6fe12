#include "soficdim/exclusion.hpp"

#include <stdexcept>

namespace soficdim {

ExclusionAutomaton::ExclusionAutomaton(KeyString pattern, int alphabet_size)
    : L_(static_cast<int>(pattern.size())), sigma_(alphabet_size) {
    if (L_ == 0) throw std::invalid_argument("empty exclusion pattern");
    if (sigma_ < 1) throw std::invalid_argument("empty alphabet");
    for (int sym : pattern)
        if (sym < 0 || sym >= sigma_)
            throw std::invalid_argument("pattern symbol out of range");

    // Failure links of the pattern's proper prefixes.
    std::vector<int> fail(static_cast<size_t>(L_), 0);
    for (int q = 1; q < L_; ++q) {
        int k = fail[static_cast<size_t>(q - 1)];
        while (k > 0 && pattern[static_cast<size_t>(q)] != pattern[static_cast<size_t>(k)])
            k = fail[static_cast<size_t>(k - 1)];
        if (pattern[static_cast<size_t>(q)] == pattern[static_cast<size_t>(k)]) ++k;
        fail[static_cast<size_t>(q)] = k;
    }

    delta_.assign(static_cast<size_t>(L_ + 1) * sigma_, L_);
    for (int q = 0; q < L_; ++q) {
        for (int c = 0; c < sigma_; ++c) {
            if (c == pattern[static_cast<size_t>(q)]) {
                delta_[static_cast<size_t>(q) * sigma_ + c] = q + 1;
            } else if (q == 0) {
                delta_[static_cast<size_t>(q) * sigma_ + c] = c == pattern[0] ? 1 : 0;
            } else {
                int k = fail[static_cast<size_t>(q - 1)];
                while (k > 0 && pattern[static_cast<size_t>(k)] != c)
                    k = fail[static_cast<size_t>(k - 1)];
                if (pattern[static_cast<size_t>(k)] == c) ++k;
                delta_[static_cast<size_t>(q) * sigma_ + c] = k;
            }
        }
    }
    // Row for the reject state stays all-L: once matched, always matched.
}

BigInt ExclusionAutomaton::count_avoiding(int k) const {
    std::vector<BigInt> cur(static_cast<size_t>(L_), 0);
    cur[0] = 1;
    for (int step = 0; step < k; ++step) {
        std::vector<BigInt> nxt(static_cast<size_t>(L_), 0);
        for (int q = 0; q < L_; ++q) {
            if (cur[static_cast<size_t>(q)] == 0) continue;
            for (int c = 0; c < sigma_; ++c) {
                const int t = next(q, c);
                if (t < L_) nxt[static_cast<size_t>(t)] += cur[static_cast<size_t>(q)];
            }
        }
        cur = std::move(nxt);
    }
    BigInt total = 0;
    for (const auto& x : cur) total += x;
    return total;
}

namespace {

void enum_dfs(const ExclusionAutomaton& aut, int k, int state, KeyString& word,
              std::vector<KeyString>& out) {
    if (static_cast<int>(word.size()) == k) {
        out.push_back(word);
        return;
    }
    for (int c = 0; c < aut.alphabet_size(); ++c) {
        const int t = aut.next(state, c);
        if (t == aut.reject_state()) continue;
        word.push_back(c);
        enum_dfs(aut, k, t, word, out);
        word.pop_back();
    }
}

}  // namespace

std::vector<KeyString> ExclusionAutomaton::enumerate_avoiding(int k) const {
    std::vector<KeyString> out;
    KeyString word;
    enum_dfs(*this, k, 0, word, out);
    return out;
}

}  // namespace soficdim
