#include "soficdim/series.hpp"

#include "soficdim/errors.hpp"
#include "soficdim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace soficdim {

namespace {

// h(r) = sum_k C_k r^{-(k+L)} - 1 evaluated through logs so that deep
// truncations with C_k ~ r^k cannot overflow.
double h_of(const std::vector<double>& logc, const std::vector<int>& pow,
            double logr) {
    double sum = 0.0;
    double comp = 0.0;  // Kahan correction
    for (size_t i = 0; i < logc.size(); ++i) {
        const double term = std::exp(logc[i] - pow[i] * logr);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum - 1.0;
}

double hprime_of(const std::vector<double>& logc, const std::vector<int>& pow,
                 double logr) {
    // d/dr of sum exp(logc - p log r) = -sum p exp(logc - (p+1) log r)
    double sum = 0.0;
    for (size_t i = 0; i < logc.size(); ++i)
        sum -= pow[i] * std::exp(logc[i] - (pow[i] + 1) * logr);
    return sum;
}

}  // namespace

RootSolve solve_series_root(const CoefficientSeries& s) {
    std::vector<double> logc;
    std::vector<int> pow;
    for (int k = 0; k <= s.K(); ++k) {
        const double ck = s.c[static_cast<size_t>(k)];
        if (ck < 0.0)
            throw MethodError("series coefficients must be non-negative");
        if (ck > 0.0) {
            logc.push_back(std::log(ck));
            pow.push_back(k + s.L);
        }
    }
    if (logc.empty())
        throw MethodError("all series coefficients are zero; no positive root");

    // Single-term lower bound r >= C_k^{1/(k+L)}; dropping all other terms
    // only lowers the left side, and h is decreasing.
    double log_lo = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < logc.size(); ++i)
        log_lo = std::max(log_lo, logc[i] / pow[i]);
    // Upper bound: replacing every term by the largest gives
    // h(r) <= T * max_k C_k r^{-(k+L)}, so r <= ((T C_k)^{1/(k+L)}) max.
    const double logT = std::log(static_cast<double>(logc.size()));
    double log_hi = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < logc.size(); ++i)
        log_hi = std::max(log_hi, (logc[i] + logT) / pow[i]);
    log_hi = std::max(log_hi, log_lo) + 1e-12;

    RootSolve out;
    int iters = 0;
    // Bisection in log r. h(exp(log_lo)) >= 0 >= h(exp(log_hi)) by the
    // bracket construction.
    double a = log_lo, b = log_hi;
    for (; iters < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(b)); ++iters) {
        const double mid = 0.5 * (a + b);
        if (h_of(logc, pow, mid) >= 0.0)
            a = mid;
        else
            b = mid;
    }
    // Newton polish on r itself.
    double logr = 0.5 * (a + b);
    for (int j = 0; j < 4; ++j, ++iters) {
        const double hv = h_of(logc, pow, logr);
        const double hp = hprime_of(logc, pow, logr);
        if (hp == 0.0) break;
        const double r = std::exp(logr);
        double rn = r - hv / hp;
        if (!(rn > 0.0) || !std::isfinite(rn)) break;
        const double cand = std::log(rn);
        if (cand < a || cand > b) break;  // stay inside the proven bracket
        logr = cand;
    }

    out.r = std::exp(logr);
    out.residual = std::abs(h_of(logc, pow, logr));
    out.iterations = iters;
    out.bracket_lo = std::exp(a);
    out.bracket_hi = std::exp(b);
    if (s.growth_estimate > 0.0 && out.r <= s.growth_estimate)
        throw MethodError(
            "root " + std::to_string(out.r) +
            " does not dominate the coefficient growth rate " +
            std::to_string(s.growth_estimate) +
            "; the truncation K is too small for this family");
    return out;
}

std::vector<std::pair<int, double>> companion_lower_bounds(
    const CoefficientSeries& s, int k_max) {
    std::vector<std::pair<int, double>> out;
    for (int k = 1; k <= k_max; ++k) {
        RealMatrix M(k);
        // First row: L-1 zeros, then C_0, C_1, ...; coefficients past the
        // truncation are zero, so oversized k just repeats the last radius.
        for (int j = s.L - 1; j < k; ++j) {
            const int idx = j - (s.L - 1);
            if (idx <= s.K()) M.at(0, j) = s.c[static_cast<size_t>(idx)];
        }
        for (int i = 1; i < k; ++i) M.at(i, i - 1) = 1.0;
        out.emplace_back(k, spectral_radius(M).radius);
    }
    return out;
}

double coefficient_growth(const CoefficientSeries& s, int window) {
    int last = s.K();
    while (last >= 0 && s.c[static_cast<size_t>(last)] <= 0.0) --last;
    if (last < window) return 0.0;
    const double head = s.c[static_cast<size_t>(last - window)];
    if (head <= 0.0) return 0.0;
    return std::pow(s.c[static_cast<size_t>(last)] / head, 1.0 / window);
}

}  // namespace soficdim
