#pragma once

// The 3D pipeline. With a recursive structure in hand the dimension is
// approached two ways: the direct tree-operator estimator
//
//     (1/N) log_{m_1} sum_{s in I_1^N} ||M_{s_N} ... M_{s_1} Phi_0||_1^{a_1}
//
// and, when a removable index with the l1-increasing property exists, the
// scalar series r = b_0 + b_1/r + b_2/r^2 + ... whose root is exact.

#include "soficdim/family.hpp"
#include "soficdim/oracle.hpp"
#include "soficdim/series.hpp"
#include "soficdim/tree.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace soficdim {

struct Dim3Config {
    int K = 40;        // b-series truncation target
    int D = -1;        // tree depth cap for b_series; -1 means K + 2
    int kmax = 40;     // companion lower bounds reported up to k_max
    int N_max = 10;    // estimator sweep depth
    int cert_depth = -1;  // l1-check basis depth; -1 means min(D, 10)
    long long budget = 20'000'000;  // outer strings + coefficient work
    int oracle_N = 9;               // brute-force sweep depth; 0 disables
    long long oracle_budget = 20'000'000;
    int threads = 1;
    bool primitivity_strict = false;
};

// One l1-increasing probe: does M_u composed after M_{t_L}...M_{t_1} have
// every column sum >= 1 on basis vectors up to the certification depth?
struct L1Attempt {
    int u = -1;
    KeyString t;
    bool ok = false;
    TreeWord witness;         // offending basis word (when ok: the minimum)
    double column_sum = 0.0;  // its column sum
};

L1Attempt check_l1_increasing(const TreeCoefficients& coeffs, int u,
                              const KeyString& t, int cert_depth);

// The limit estimator over all strings s in I_1^N, N = 1..N_max, computed
// with depth-capped tree vectors. Relative leak beyond 1e-9 at any node is
// an error naming the depth that would have sufficed. max_leak (optional)
// receives the worst relative leak observed.
EstimateSequence tree_sum_estimate(const TreeCoefficients& coeffs, int N_max,
                                   int D, int threads = 1,
                                   long long budget = 20'000'000,
                                   double* max_leak = nullptr);

// b_k = sum over s in (I_1 \ {u})^k of c(s)^{a_1}, where M_u Phi_k(s) is
// root-only with root c(s) (u must be removable). Exact truncation at K;
// the returned series has L = 1, alpha = a_1, and its growth estimate set.
CoefficientSeries b_series(const TreeCoefficients& coeffs, int u, int K, int D,
                           int threads = 1, long long budget = -1);

struct Dim3Result {
    std::optional<RecursiveStructure> structure;
    bool primitive = false;

    // Closed-equation path (series root). all_removable marks the
    // degenerate family where r = sum_u C_empty(u)^{a_1} directly.
    bool applicable = false;
    bool all_removable = false;
    int removable_used = -1;
    std::optional<KeyString> l1_tail;  // t that passed condition probing
    std::vector<L1Attempt> l1_attempts;
    CoefficientSeries series;
    bool budget_clamped = false;  // K lowered to fit the string budget
    RootSolve solve;
    double dim = 0.0;
    std::vector<std::pair<int, double>> lower_bounds;
    // Roots from the other removable indices, for cross-checking.
    std::vector<std::pair<int, double>> alternate_roots;

    EstimateSequence estimate;  // tree-sum estimator sweep
    double estimate_leak = 0.0;

    EstimateSequence oracle;
    std::optional<double> oracle_delta;  // dim - oracle extrapolation

    std::vector<std::string> notes;  // inapplicability reasons, mismatches
};

// Full pipeline: primitivity check (warn or fail per config), structure
// detection, estimator sweep, removable-index probing (smallest first,
// l1 condition probed with t = empty, length-1, length-2), b-series solve
// with companion bounds, and the brute-force oracle.
Dim3Result dimension3d(const AdjacencyFamily& fam, const Dim3Config& config);

}  // namespace soficdim
