#pragma once

// Brute-force evaluation of the defining limit formulas. Everything here is
// deliberately dumb: exact integer products, exhaustive enumeration, float
// arithmetic only at the final powers. These routines arbitrate whenever the
// fast pipelines and the bundled reference values disagree.

#include "soficdim/bigmatrix.hpp"
#include "soficdim/family.hpp"
#include "soficdim/tree.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace soficdim {

struct EstimateSequence {
    std::vector<std::pair<int, double>> values;  // (N, estimate), N increasing
    std::optional<double> extrapolated;          // Aitken-accelerated limit
    std::optional<double> spread;  // |last raw estimate - extrapolated|
};

// Aitken delta-squared on the most recent triple whose second difference is
// numerically alive (|d2| > 1e-14); nullopt when no triple qualifies.
std::optional<double> aitken_extrapolate(const std::vector<double>& seq);

// Multiset of entry-sum norms of all |I_1|^N products at depth N, as
// norm -> multiplicity. extend_left builds products suffix-first (A * P
// instead of P * A); both directions must produce identical maps. Zero
// products are pruned (they contribute nothing downstream). budget caps the
// number of matrix products formed.
std::map<BigInt, long long> product_norm_counts(const AdjacencyFamily& fam,
                                                int N, bool extend_left,
                                                long long budget);

// (1/N) log_{m_1} sum_{u in I_1^N} entry_sum(A_{u_1}...A_{u_N})^alpha.
// The sum is taken over the exact norm multiset in ascending norm order, so
// the result is bit-identical regardless of thread count or the direction
// products were built in.
double brute_dim2(const AdjacencyFamily& fam, int N,
                  long long budget = 20'000'000, int threads = 1);
EstimateSequence brute_dim2_sweep(const AdjacencyFamily& fam, int N_max,
                                  long long budget = 20'000'000,
                                  int threads = 1);

// Nested 3D analogue:
//   (1/N) log_{m_1} sum_{s in I_1^N} ( sum_{t in I_2^N}
//       entry_sum(A_{(s_1,t_1)}...A_{(s_N,t_N)})^{a_2} )^{a_1},
// with zero products pruned from the inner enumeration. budget caps the
// total number of matrix products formed across the whole sweep.
double brute_dim3(const AdjacencyFamily& fam, int N,
                  long long budget = 20'000'000, int threads = 1);
EstimateSequence brute_dim3_sweep(const AdjacencyFamily& fam, int N_max,
                                  long long budget = 20'000'000,
                                  int threads = 1);

// Phi_N for the 2D tower, built verbatim from its defining sums (never via
// the recursion): entry k for 0 <= k <= N-L is
//   sum over ALL u in I_1^{N-L-k} of [v * P(u) * P(s) * e]^alpha,
// entries strictly between N-L and N are zero, and entry N is (v*e)^alpha.
std::vector<double> phi2_direct(const AdjacencyFamily& fam, const KeyString& s,
                                const RowDirection& v, int N);

// Phi_N(s) for the 3D tower, built verbatim from its defining sums. Entries
// live at the root and at suffixes of s made entirely of non-removable
// symbols: the length-k suffix (k < N) carries
//   sum_{p in Q(s_{N-k})} sum_w [v * P(w) * A_p * e]^{a_2}
// with w ranging over ALL I_2-completions of the prefix s_1..s_{N-k-1}, and
// the full word (k = N) carries (v*e)^{a_2}. N = 0 gives the unit vector.
TreeVector phi3_direct(const AdjacencyFamily& fam,
                       const RecursiveStructure& st, const KeyString& s);

struct TrivialCase {
    std::string kind;  // "commuting" | "common-eigenvector"
    double dim = 0.0;
};

// Closed form for the two easy families: all matrices commute (exact integer
// check) with primitive key sum, or all nonzero matrices share a dominant
// eigenvector (within 1e-9 after max-entry normalization). Returns the
// nested sum of spectral radii formula; nullopt when neither case holds.
std::optional<TrivialCase> trivial_case_dimension(const AdjacencyFamily& fam);

}  // namespace soficdim
