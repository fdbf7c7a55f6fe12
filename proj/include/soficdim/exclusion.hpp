#pragma once

#include "soficdim/bigmatrix.hpp"

#include <vector>

namespace soficdim {

// Deterministic automaton tracking the longest suffix of the input that is
// a prefix of a fixed pattern. State L (pattern length) is an absorbing
// reject state: a word reaches it iff the pattern occurs as a substring.
// Built with the usual failure-function construction, so stepping is O(1).
class ExclusionAutomaton {
public:
    ExclusionAutomaton(KeyString pattern, int alphabet_size);

    int pattern_length() const { return L_; }
    int alphabet_size() const { return sigma_; }
    int state_count() const { return L_ + 1; }
    int reject_state() const { return L_; }

    int next(int state, int symbol) const {
        return delta_[static_cast<size_t>(state) * sigma_ + symbol];
    }

    // Exact number of length-k words avoiding the pattern.
    BigInt count_avoiding(int k) const;

    // All length-k avoiding words in lex order. Meant for tests and small
    // enumerations; the hot paths run their own DFS over next().
    std::vector<KeyString> enumerate_avoiding(int k) const;

private:
    int L_;
    int sigma_;
    std::vector<int> delta_;  // (L+1) x sigma
};

}  // namespace soficdim
