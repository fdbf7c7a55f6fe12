#include "soficdim/spectral.hpp"

#include "soficdim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace soficdim {

namespace {

// log(rho) by Gelfand's formula on renormalized squarings. Exact limit of
// log||A^{2^k}|| / 2^k; the partial sums converge geometrically.
double gelfand_log_radius(const RealMatrix& A) {
    const int n = A.n;
    RealMatrix B = A;
    double acc = 0.0;
    for (int step = 0; step <= 64; ++step) {
        double c = 0.0;
        for (double x : B.a) c = std::max(c, std::abs(x));
        if (c == 0.0) return -std::numeric_limits<double>::infinity();
        const double term = std::log(c) / std::ldexp(1.0, step);
        acc += term;
        if (step > 4 && std::abs(term) < 1e-15 * std::max(1.0, std::abs(acc)))
            break;
        RealMatrix next(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const double bik = B.at(i, k) / c;
                if (bik == 0.0) continue;
                for (int j = 0; j < n; ++j)
                    next.at(i, j) += bik * (B.at(k, j) / c);
            }
        B = std::move(next);
    }
    return acc;
}

}  // namespace

SpectralResult spectral_radius(const RealMatrix& A, double tol, long max_iter) {
    SpectralResult res;
    const int n = A.n;
    if (n == 0) return res;

    std::vector<double> x(static_cast<size_t>(n), 1.0 / n);
    std::vector<double> y(static_cast<size_t>(n));
    double best_width = std::numeric_limits<double>::infinity();
    double stall_width = best_width;
    bool restarted = false;

    for (long it = 1; it <= max_iter; ++it) {
        res.iterations = it;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j)
                s += A.at(i, j) * x[static_cast<size_t>(j)];
            y[static_cast<size_t>(i)] = s;
        }
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            norm += y[static_cast<size_t>(i)];
            if (x[static_cast<size_t>(i)] > 1e-300) {
                const double ratio =
                    y[static_cast<size_t>(i)] / x[static_cast<size_t>(i)];
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
        if (norm == 0.0) {
            // x was driven into the kernel; with the all-ones start this
            // means every row sums to zero, i.e. A = 0.
            res.radius = 0.0;
            res.power_converged = true;
            return res;
        }
        res.bracket_lo = lo;
        res.bracket_hi = hi;
        const double width = hi - lo;
        best_width = std::min(best_width, width);
        if (width <= tol * std::max(hi, 1.0)) {
            res.radius = 0.5 * (lo + hi);
            res.power_converged = true;
            return res;
        }
        for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] / norm;

        if (it % 500 == 0) {
            if (best_width > 0.99 * stall_width) {
                if (!restarted) {
                    restarted = true;
                    // Deterministic symmetry-breaking restart.
                    double s = 0.0;
                    for (int i = 0; i < n; ++i) {
                        x[static_cast<size_t>(i)] =
                            1.0 + static_cast<double>(i + 1) / (2.0 * n);
                        s += x[static_cast<size_t>(i)];
                    }
                    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] /= s;
                    best_width = std::numeric_limits<double>::infinity();
                    stall_width = best_width;
                    continue;
                }
                break;  // Periodic/reducible: the bracket will never close.
            }
            stall_width = best_width;
        }
    }

    const double lg = gelfand_log_radius(A);
    res.radius = std::isinf(lg) ? 0.0 : std::exp(lg);
    res.power_converged = false;
    if (!std::isfinite(res.radius))
        throw ConvergenceError("spectral radius did not converge",
                               res.bracket_lo, res.bracket_hi);
    return res;
}

}  // namespace soficdim
