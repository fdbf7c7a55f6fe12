#pragma once

// Rooted-tree machinery for the 3D decomposition. Words over the
// non-removable alphabet J index a tree; each top-level symbol u acts on
// finitely supported vectors over that tree as "directed shift + return
// map": the root of the image collects sum_s C_s(u) * x_s, and (for
// non-removable u) every entry is shifted one letter deeper.

#include "soficdim/bigmatrix.hpp"
#include "soficdim/family.hpp"

#include <atomic>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace soficdim {

// Word over I_1 symbols, one raw byte per letter; "" is the root.
using TreeWord = std::string;

struct RecursiveStructure {
    RowDirection v;
    // P[u]: the t in I_2 with A_{(u,t)} zero or rank-1 along v. complement[u]
    // is I_2 \ P[u] (the choices that survive into R^N enumerations).
    std::vector<std::vector<int>> P;
    std::vector<std::vector<int>> complement;
    // q_keys[u]: flat keys (u,t) with t in P[u] and A_{(u,t)} nonzero.
    std::vector<std::vector<int>> q_keys;
    std::vector<int> removable;      // u with P(u) = I_2, ascending
    std::vector<int> nonremovable;   // J, ascending

    bool is_removable(int u) const;
};

// Scans nonzero keys in flat order for rank-1 image directions; the first
// direction under which every u in I_1 has some rank-1 companion wins.
// nullopt when no direction works.
std::optional<RecursiveStructure> detect_recursive_structure(
    const AdjacencyFamily& fam);

struct TreeVector {
    std::map<TreeWord, double> entries;  // zero entries are not stored
    double leak = 0.0;  // mass dropped beyond the depth cap, cumulative

    double l1() const;
    double root() const;
    static TreeVector unit();  // Phi_0: root entry 1

    void set(const TreeWord& w, double value);  // drops exact zeros
    double get(const TreeWord& w) const;
};

// C_s(u) evaluator with a shared cache (values are deterministic, so
// concurrent duplicate fills are harmless). Enumeration work is charged to
// an external budget counter so callers can bound total cost.
class TreeCoefficients {
public:
    TreeCoefficients(const AdjacencyFamily& fam,
                     const RecursiveStructure& st);

    // C_s(u) = sum_{p in Q(u)} sum_{w in R^N(s)} D_w(p)^{a_2}, where R^N(s)
    // picks t_i outside P(s_i) at every position and D_w(p) is the scalar
    // with v * prod(w) * A_p = D * v. Cached per (u, s).
    double value(int u, const TreeWord& s) const;

    // Uncached single evaluation (tests and cache misses).
    double compute(int u, const TreeWord& s) const;

    const AdjacencyFamily& family() const { return fam_; }
    const RecursiveStructure& structure() const { return st_; }

    // Enumeration steps consumed so far (R^N nodes visited).
    long long work() const;
    void set_budget(long long max_work);  // throws BudgetError when crossed

private:
    const AdjacencyFamily& fam_;
    const RecursiveStructure& st_;
    mutable std::unordered_map<std::string, double> cache_;
    mutable std::shared_mutex mutex_;
    mutable std::atomic<long long> work_{0};
    long long budget_ = -1;  // <0: unlimited
};

// One application of the operator for symbol u, with depth cap:
//   root of the image = sum over support of C_s(u) * x_s;
//   for non-removable u additionally (image)_{s u} = x_s, except that words
//   longer than depth_cap are dropped and their mass added to leak.
// Removable u yields a root-only image.
TreeVector apply_operator(const TreeCoefficients& coeffs, int u,
                          const TreeVector& x, int depth_cap);

}  // namespace soficdim
