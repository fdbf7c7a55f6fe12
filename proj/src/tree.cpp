#include "soficdim/tree.hpp"

#include "soficdim/accum.hpp"
#include "soficdim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace soficdim {

bool RecursiveStructure::is_removable(int u) const {
    return std::binary_search(removable.begin(), removable.end(), u);
}

std::optional<RecursiveStructure> detect_recursive_structure(
    const AdjacencyFamily& fam) {
    if (fam.alphabet.dim != 3) return std::nullopt;
    const int m1 = fam.alphabet.m[0];
    const int m2 = fam.alphabet.m[1];

    // Candidate directions, in flat key order, deduplicated.
    std::vector<RowDirection> candidates;
    for (int key = 0; key < fam.alphabet.key_count(); ++key) {
        const IntMatrix& A = fam.matrix(key);
        if (A.is_zero()) continue;
        if (auto dir = image_rank1(A)) {
            if (std::find(candidates.begin(), candidates.end(), *dir) ==
                candidates.end())
                candidates.push_back(std::move(*dir));
        }
    }

    for (const RowDirection& v : candidates) {
        RecursiveStructure st;
        st.v = v;
        st.P.assign(static_cast<size_t>(m1), {});
        st.complement.assign(static_cast<size_t>(m1), {});
        st.q_keys.assign(static_cast<size_t>(m1), {});
        bool ok = true;
        for (int u = 0; u < m1 && ok; ++u) {
            bool has_rank1 = false;
            for (int t = 0; t < m2; ++t) {
                const int key = u * m2 + t;
                const IntMatrix& A = fam.matrix(key);
                if (A.is_zero()) {
                    st.P[static_cast<size_t>(u)].push_back(t);
                    continue;
                }
                auto dir = image_rank1(A);
                if (dir && *dir == v) {
                    st.P[static_cast<size_t>(u)].push_back(t);
                    st.q_keys[static_cast<size_t>(u)].push_back(key);
                    has_rank1 = true;
                } else {
                    st.complement[static_cast<size_t>(u)].push_back(t);
                }
            }
            // The defining condition: every u needs a t whose matrix
            // genuinely collapses onto span{v} (zero matrices do not count).
            if (!has_rank1) ok = false;
        }
        if (!ok) continue;
        for (int u = 0; u < m1; ++u) {
            if (static_cast<int>(st.P[static_cast<size_t>(u)].size()) == m2)
                st.removable.push_back(u);
            else
                st.nonremovable.push_back(u);
        }
        return st;
    }
    return std::nullopt;
}

double TreeVector::l1() const {
    KahanSum acc;
    for (const auto& [w, x] : entries) acc.add(x);
    return acc.value();
}

double TreeVector::root() const { return get(TreeWord{}); }

TreeVector TreeVector::unit() {
    TreeVector x;
    x.entries[TreeWord{}] = 1.0;
    return x;
}

void TreeVector::set(const TreeWord& w, double value) {
    if (value == 0.0)
        entries.erase(w);
    else
        entries[w] = value;
}

double TreeVector::get(const TreeWord& w) const {
    const auto it = entries.find(w);
    return it == entries.end() ? 0.0 : it->second;
}

TreeCoefficients::TreeCoefficients(const AdjacencyFamily& fam,
                                   const RecursiveStructure& st)
    : fam_(fam), st_(st) {}

long long TreeCoefficients::work() const { return work_.load(); }

void TreeCoefficients::set_budget(long long max_work) { budget_ = max_work; }

double TreeCoefficients::compute(int u, const TreeWord& s) const {
    const int m2 = fam_.alphabet.m[1];
    const double a2 = fam_.alphabet.exponent(2);
    const auto& q = st_.q_keys[static_cast<size_t>(u)];
    if (q.empty()) return 0.0;

    // DFS over R^N(s): position i picks t_i outside P(s_i). The row vector
    // v * prod(A_{(s_1,t_1)} ... A_{(s_i,t_i)}) is carried down exactly.
    KahanSum total;
    const int N = static_cast<int>(s.size());
    std::vector<std::vector<BigInt>> rows(static_cast<size_t>(N) + 1);
    rows[0] = st_.v.v;

    // Pivot for exact scalar extraction: first nonzero coordinate of v.
    int pivot = 0;
    while (st_.v.v[static_cast<size_t>(pivot)] == 0) ++pivot;
    const BigInt& vpiv = st_.v.v[static_cast<size_t>(pivot)];

    struct Frame {
        int choice_idx;
    };
    std::vector<Frame> stack(static_cast<size_t>(N));
    int depth = 0;
    if (N > 0) stack[0].choice_idx = 0;

    auto leaf = [&](const std::vector<BigInt>& row) {
        for (int key : q) {
            const std::vector<BigInt> img =
                row_times_matrix(row, fam_.matrix(key));
            // img is an exact integer multiple of v by construction
            // (every row of A_key lies on span{v}).
            const BigInt num = img[static_cast<size_t>(pivot)];
            if (num == 0) continue;
            BigInt d = num / vpiv;
            if (d * vpiv != num)
                throw ProportionalityError(
                    "image row is not an integer multiple of direction " +
                    st_.v.to_string());
            total.add(std::exp(a2 * log_value(d)));
        }
    };

    if (N == 0) {
        leaf(rows[0]);
        return total.value();
    }

    while (depth >= 0) {
        const int sym = static_cast<unsigned char>(s[static_cast<size_t>(depth)]);
        const auto& choices = st_.complement[static_cast<size_t>(sym)];
        if (stack[static_cast<size_t>(depth)].choice_idx >=
            static_cast<int>(choices.size())) {
            --depth;
            continue;
        }
        const int t = choices[static_cast<size_t>(
            stack[static_cast<size_t>(depth)].choice_idx++)];
        const long long w = work_.fetch_add(1) + 1;
        if (budget_ >= 0 && w > budget_)
            throw BudgetError("coefficient enumeration exceeded its budget");
        const int key = sym * m2 + t;
        std::vector<BigInt> next =
            row_times_matrix(rows[static_cast<size_t>(depth)], fam_.matrix(key));
        bool zero = true;
        for (const auto& x : next)
            if (x != 0) {
                zero = false;
                break;
            }
        if (zero) continue;  // all descendants contribute 0
        rows[static_cast<size_t>(depth) + 1] = std::move(next);
        if (depth + 1 == N) {
            leaf(rows[static_cast<size_t>(depth) + 1]);
        } else {
            ++depth;
            stack[static_cast<size_t>(depth)].choice_idx = 0;
        }
    }
    return total.value();
}

double TreeCoefficients::value(int u, const TreeWord& s) const {
    std::string key;
    key.reserve(s.size() + 1);
    key.push_back(static_cast<char>(u));
    key += s;
    {
        std::shared_lock lock(mutex_);
        const auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    const double val = compute(u, s);
    {
        std::unique_lock lock(mutex_);
        cache_.emplace(std::move(key), val);
    }
    return val;
}

TreeVector apply_operator(const TreeCoefficients& coeffs, int u,
                          const TreeVector& x, int depth_cap) {
    const RecursiveStructure& st = coeffs.structure();
    TreeVector out;
    out.leak = x.leak;

    KahanSum root;
    for (const auto& [w, val] : x.entries)
        root.add(coeffs.value(u, w) * val);
    out.set(TreeWord{}, root.value());

    if (!st.is_removable(u)) {
        for (const auto& [w, val] : x.entries) {
            if (static_cast<int>(w.size()) + 1 > depth_cap) {
                out.leak += val;
                continue;
            }
            TreeWord shifted = w;
            shifted.push_back(static_cast<char>(u));
            out.set(shifted, val);
        }
    }
    return out;
}

}  // namespace soficdim
