#pragma once

// Root of the truncated characteristic series
//
//     r^L = C_0 + C_1 / r + C_2 / r^2 + ... + C_K / r^K
//
// equivalently  h(r) = sum_k C_k r^{-(k+L)} - 1 = 0  with  h  strictly
// decreasing on (0, inf) whenever some C_k > 0, so the positive root is
// unique. Coefficients can be astronomically large for deep truncations,
// so everything is evaluated in the log domain.

#include <utility>
#include <vector>

namespace soficdim {

struct CoefficientSeries {
    int L = 1;               // power of r on the left-hand side
    double alpha = 1.0;      // exponent the coefficients were built with
    std::vector<double> c;   // C_0 .. C_K, all >= 0
    // Tail growth proxy (C_K / C_{K-w})^{1/w}; the solved root must exceed
    // it or the truncated series says nothing about the full one. Zero
    // means "not estimated" and disables the check.
    double growth_estimate = 0.0;

    int K() const { return static_cast<int>(c.size()) - 1; }
};

struct RootSolve {
    double r = 0.0;
    double residual = 0.0;   // |sum_k C_k r^{-(k+L)} - 1|
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

// Unique positive root; requires some C_k > 0 (throws MethodError otherwise).
RootSolve solve_series_root(const CoefficientSeries& s);

// Spectral radii of the top-left k x k truncations of the companion matrix
// (first row C_0..C_{K} placed after L-1 zeros, ones on the subdiagonal).
// Returned as (k, radius) pairs for k = 1 .. k_max; these increase to the
// series root from below.
std::vector<std::pair<int, double>> companion_lower_bounds(
    const CoefficientSeries& s, int k_max);

// Growth rate (C_K / C_{K-w})^{1/w} of the tail over a trailing window,
// used to sanity-check that the coefficients grow strictly slower than
// r^{k} (so the series actually converges at its root). Returns 0 when the
// series is too short.
double coefficient_growth(const CoefficientSeries& s, int window = 5);

}  // namespace soficdim
