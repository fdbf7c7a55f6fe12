#pragma once

#include <vector>

namespace soficdim {

// Small dense real matrix, row-major. Only non-negative matrices are fed to
// spectral_radius (companion truncations, adjacency sums).
struct RealMatrix {
    int n = 0;
    std::vector<double> a;

    RealMatrix() = default;
    explicit RealMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

struct SpectralResult {
    double radius = 0.0;
    long iterations = 0;     // power-iteration steps actually taken
    bool power_converged = false;  // false when the doubling fallback decided
    double bracket_lo = 0.0;  // last Collatz-Wielandt bracket seen
    double bracket_hi = 0.0;
};

// Spectral radius of a non-negative matrix.
//
// Power iteration from the all-ones vector with the Collatz-Wielandt bracket
// min_i (Ax)_i/x_i <= rho <= max_i (Ax)_i/x_i as the stopping rule. The
// bracket can stall on reducible or periodic matrices (the iterate ratios
// oscillate without tightening), so after a stall we restart once from a
// perturbed vector, and if that stalls too we switch to normalized repeated
// squaring, which converges unconditionally:  log rho = sum_j log(c_j)/2^j
// for the norms c_j of the successively squared, renormalized powers.
SpectralResult spectral_radius(const RealMatrix& A, double tol = 1e-13,
                               long max_iter = 1'000'000);

}  // namespace soficdim
