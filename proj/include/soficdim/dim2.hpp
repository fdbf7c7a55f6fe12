#pragma once

// The 2D tower pipeline: find a rank-1 tail string s, enumerate the
// avoiding-string coefficients C_k, solve the degree-L series equation
//
//     r^L = C_0 + C_1/r + C_2/r^2 + ...
//
// and certify the root from below with companion-matrix truncations.

#include "soficdim/bigmatrix.hpp"
#include "soficdim/family.hpp"
#include "soficdim/oracle.hpp"
#include "soficdim/series.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace soficdim {

struct Dim2Config {
    int K = 40;               // truncation floor: never stop before this
    int kmax = 40;            // companion lower bounds reported up to k_max
    int max_string_len = 8;   // rank-1 tail search depth
    long long budget = 20'000'000;   // cumulative avoiding strings enumerated
    long long search_budget = 2'000'000;  // rank-1 search nodes
    int oracle_N = 0;         // brute-force sweep depth; 0 disables
    long long oracle_budget = 20'000'000;
    int threads = 1;
    bool primitivity_strict = false;  // fail instead of warn on primitivity
};

struct Dim2Result {
    // False when no rank-1 string exists within the search depth; the
    // result then carries only the oracle estimates.
    bool applicable = false;
    bool primitive = false;  // primitivity of the summed key matrix
    std::optional<Rank1Search> tail;

    CoefficientSeries series;
    bool budget_clamped = false;     // enumeration stopped by the budget
    long long strings_enumerated = 0;

    RootSolve solve;  // meaningful only when applicable
    double dim = 0.0;
    std::vector<std::pair<int, double>> lower_bounds;  // (k, r_k)

    EstimateSequence oracle;  // populated when config.oracle_N > 0
    std::optional<double> oracle_delta;  // dim - oracle extrapolation
};

// C_0..C_K over the avoiding strings of the exclusion automaton:
//   C_k = sum over u in I_1^k avoiding s of J_u^alpha,
// where J_u is the exact integer with v * P(u) * P(s) = J_u * v. Each level
// is summed in ascending order of magnitude; parallel partial enumerations
// are merged before sorting, so results are thread-count independent.
// budget < 0 disables the cumulative string budget. enumerated (optional)
// receives the number of avoiding strings visited.
CoefficientSeries coefficient_series(const AdjacencyFamily& fam,
                                     const KeyString& s, const RowDirection& v,
                                     int K, int threads = 1,
                                     long long budget = -1,
                                     long long* enumerated = nullptr);

// One application of the tower recursion to a level vector:
//   out[0] = sum_{j >= L-1} C_{j-L+1} * phi[j],   out[i] = phi[i-1].
// The series must be long enough to cover every populated level of phi.
std::vector<double> tower_step(const CoefficientSeries& s,
                               const std::vector<double>& phi);

// Full pipeline: primitivity check (warn or fail per config), rank-1 tail
// search, adaptive coefficient enumeration (grow K until the tail term
// C_K r^{-K-L} drops below 1e-14 * r^L, the budget clamps, or the level
// count hits a hard cap), series solve with the growth guard, companion
// lower bounds, and the optional oracle sweep.
Dim2Result dimension2d(const AdjacencyFamily& fam, const Dim2Config& config);

}  // namespace soficdim
