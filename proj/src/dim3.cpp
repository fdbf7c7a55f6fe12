#include "soficdim/dim3.hpp"

#include "soficdim/accum.hpp"
#include "soficdim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace soficdim {

namespace {

double power_or_zero(double base, double expo) {
    if (base <= 0.0) return 0.0;
    return std::exp(expo * std::log(base));
}

// sum_{k=0}^{K} width^k, saturating against the budget comparison.
bool level_count_fits(int width, int K, long long budget) {
    if (budget < 0) return true;
    BigInt total = 0;
    BigInt level = 1;
    for (int k = 0; k <= K; ++k) {
        total += level;
        if (total > budget) return false;
        level *= width;
    }
    return true;
}

void fill_extrapolation(EstimateSequence& seq) {
    std::vector<double> raw;
    raw.reserve(seq.values.size());
    for (const auto& [N, v] : seq.values) raw.push_back(v);
    seq.extrapolated = aitken_extrapolate(raw);
    if (seq.extrapolated && !raw.empty()) {
        seq.spread = std::abs(raw.back() - *seq.extrapolated);
    }
}

// Root entry of M_u applied to x, without materializing the image.
double root_after(const TreeCoefficients& coeffs, int u, const TreeVector& x) {
    KahanSum acc;
    for (const auto& [word, val] : x.entries) {
        acc.add(coeffs.value(u, word) * val);
    }
    return acc.value();
}

void require_small_leak(const TreeVector& x, int depth, int need) {
    const double mass = x.l1();
    if (x.leak > 1e-9 * (mass + x.leak)) {
        throw MethodError(
            "tree vector leaked " + std::to_string(x.leak) +
            " past the depth cap at word length " + std::to_string(depth) +
            "; increase D to at least " + std::to_string(need));
    }
}

struct EstimateWalker {
    const TreeCoefficients& coeffs;
    int N_max;
    int D;
    int m1;
    std::vector<KahanSum> totals;  // index = N
    double a1;
    double leak_max = 0.0;

    EstimateWalker(const TreeCoefficients& c, int n, int d)
        : coeffs(c),
          N_max(n),
          D(d),
          m1(c.family().alphabet.m[0]),
          totals(static_cast<size_t>(n) + 1),
          a1(c.family().alphabet.exponent(1)) {}

    void walk(const TreeVector& phi, int depth) {
        require_small_leak(phi, depth, N_max);
        const double mass = phi.l1();
        if (mass + phi.leak > 0.0) {
            leak_max = std::max(leak_max, phi.leak / (mass + phi.leak));
        }
        totals[static_cast<size_t>(depth)].add(power_or_zero(mass, a1));
        if (depth >= N_max || mass <= 0.0) return;
        for (int sym = 0; sym < m1; ++sym) {
            walk(apply_operator(coeffs, sym, phi, D), depth + 1);
        }
    }
};

struct SeriesWalker {
    const TreeCoefficients& coeffs;
    int u;
    int K;
    int D;
    std::vector<int> others;       // I_1 \ {u}, ascending
    std::vector<KahanSum> levels;  // index = k
    double a1;

    SeriesWalker(const TreeCoefficients& c, int u_, int k, int d)
        : coeffs(c),
          u(u_),
          K(k),
          D(d),
          levels(static_cast<size_t>(k) + 1),
          a1(c.family().alphabet.exponent(1)) {
        const int m1 = c.family().alphabet.m[0];
        for (int sym = 0; sym < m1; ++sym) {
            if (sym != u) others.push_back(sym);
        }
    }

    void walk(const TreeVector& phi, int depth) {
        require_small_leak(phi, depth, K);
        levels[static_cast<size_t>(depth)].add(
            power_or_zero(root_after(coeffs, u, phi), a1));
        if (depth >= K) return;
        for (int sym : others) {
            walk(apply_operator(coeffs, sym, phi, D), depth + 1);
        }
    }
};

std::vector<KeyString> tail_candidates(int m1) {
    std::vector<KeyString> out;
    out.push_back({});
    for (int a = 0; a < m1; ++a) out.push_back({a});
    for (int a = 0; a < m1; ++a) {
        for (int b = 0; b < m1; ++b) out.push_back({a, b});
    }
    return out;
}

}  // namespace

L1Attempt check_l1_increasing(const TreeCoefficients& coeffs, int u,
                              const KeyString& t, int cert_depth) {
    const auto& st = coeffs.structure();
    const auto& J = st.nonremovable;
    L1Attempt out;
    out.u = u;
    out.t = t;

    BigInt basis_count = 1;
    BigInt level = 1;
    for (int d = 1; d <= cert_depth && !J.empty(); ++d) {
        level *= static_cast<int>(J.size());
        basis_count += level;
        if (basis_count > 4'000'000) {
            throw BudgetError("l1 certification basis exceeds 4e6 words at depth " +
                              std::to_string(d));
        }
    }

    const int cap = cert_depth + static_cast<int>(t.size()) + 2;
    double min_sum = -1.0;
    TreeWord min_word;
    bool failed = false;

    // Basis words over J in length-then-lex order; stop at first failure so
    // the witness is the shortest (then lexicographically first) offender.
    std::vector<TreeWord> frontier = {TreeWord{}};
    for (int len = 0; len <= cert_depth && !failed; ++len) {
        for (const TreeWord& lam : frontier) {
            TreeVector x;
            x.set(lam, 1.0);
            for (int sym : t) x = apply_operator(coeffs, sym, x, cap);
            x = apply_operator(coeffs, u, x, cap);
            const double col = x.l1();
            if (min_sum < 0.0 || col < min_sum) {
                min_sum = col;
                min_word = lam;
            }
            if (col < 1.0 - 1e-12) {
                failed = true;
                break;
            }
        }
        if (failed || J.empty()) break;
        std::vector<TreeWord> next;
        next.reserve(frontier.size() * J.size());
        for (const TreeWord& lam : frontier) {
            for (int sym : J) next.push_back(lam + static_cast<char>(sym));
        }
        frontier = std::move(next);
    }

    out.ok = !failed;
    out.witness = min_word;
    out.column_sum = min_sum;
    return out;
}

EstimateSequence tree_sum_estimate(const TreeCoefficients& coeffs, int N_max,
                                   int D, int threads, long long budget,
                                   double* max_leak) {
    const auto& fam = coeffs.family();
    if (fam.alphabet.dim != 3) {
        throw MethodError("the tree-sum estimator requires a three-dimensional family");
    }
    const int m1 = fam.alphabet.m[0];
    if (!level_count_fits(m1, N_max, budget)) {
        throw BudgetError("tree-sum estimate over " + std::to_string(m1) +
                          "^N strings up to N = " + std::to_string(N_max) +
                          " exceeds the budget of " + std::to_string(budget));
    }

    std::vector<EstimateWalker> parts;
    parts.reserve(static_cast<size_t>(m1));
    for (int sym = 0; sym < m1; ++sym) parts.emplace_back(coeffs, N_max, D);
    run_indexed_tasks(m1, threads, [&](int sym) {
        if (N_max < 1) return;
        parts[static_cast<size_t>(sym)].walk(
            apply_operator(coeffs, sym, TreeVector::unit(), D), 1);
    });

    EstimateSequence seq;
    double worst_leak = 0.0;
    const double logm1 = std::log(static_cast<double>(m1));
    for (int N = 1; N <= N_max; ++N) {
        KahanSum total;
        for (const auto& part : parts) {
            total.add(part.totals[static_cast<size_t>(N)].value());
        }
        const double S = total.value();
        if (!(S > 0.0)) break;
        seq.values.emplace_back(N, std::log(S) / (N * logm1));
    }
    for (const auto& part : parts) worst_leak = std::max(worst_leak, part.leak_max);
    if (max_leak != nullptr) *max_leak = worst_leak;
    fill_extrapolation(seq);
    return seq;
}

CoefficientSeries b_series(const TreeCoefficients& coeffs, int u, int K, int D,
                           int threads, long long budget) {
    const auto& st = coeffs.structure();
    if (!st.is_removable(u)) {
        throw MethodError("b-series requires a removable index; " +
                          std::to_string(u) + " is not removable");
    }
    const int m1 = coeffs.family().alphabet.m[0];
    if (!level_count_fits(m1 - 1, K, budget)) {
        throw BudgetError("b-series over " + std::to_string(m1 - 1) +
                          "^k strings up to k = " + std::to_string(K) +
                          " exceeds the budget of " + std::to_string(budget));
    }

    std::vector<int> others;
    for (int sym = 0; sym < m1; ++sym) {
        if (sym != u) others.push_back(sym);
    }
    std::vector<SeriesWalker> parts;
    parts.reserve(others.size());
    for (size_t i = 0; i < others.size(); ++i) parts.emplace_back(coeffs, u, K, D);
    run_indexed_tasks(static_cast<int>(others.size()), threads, [&](int i) {
        if (K < 1) return;
        parts[static_cast<size_t>(i)].walk(
            apply_operator(coeffs, others[static_cast<size_t>(i)],
                           TreeVector::unit(), D),
            1);
    });

    CoefficientSeries series;
    series.L = 1;
    series.alpha = coeffs.family().alphabet.exponent(1);
    series.c.resize(static_cast<size_t>(K) + 1, 0.0);
    series.c[0] =
        power_or_zero(root_after(coeffs, u, TreeVector::unit()), series.alpha);
    for (int k = 1; k <= K; ++k) {
        KahanSum acc;
        for (const auto& part : parts) {
            acc.add(part.levels[static_cast<size_t>(k)].value());
        }
        series.c[static_cast<size_t>(k)] = acc.value();
    }
    series.growth_estimate = coefficient_growth(series);
    return series;
}

Dim3Result dimension3d(const AdjacencyFamily& fam, const Dim3Config& config) {
    if (fam.alphabet.dim != 3) {
        throw MethodError("dimension3d requires a three-dimensional family");
    }
    Dim3Result res;

    res.primitive = is_primitive(fam.key_sum());
    if (!res.primitive) {
        if (config.primitivity_strict) {
            throw MethodError("the summed key matrix is not primitive");
        }
        res.notes.push_back("warning: the summed key matrix is not primitive");
    }

    res.structure = detect_recursive_structure(fam);
    const int m1 = fam.alphabet.m[0];
    const double logm1 = std::log(static_cast<double>(m1));

    if (!res.structure) {
        res.notes.push_back(
            "no common rank-1 direction found; tree operators and the series "
            "equation do not apply");
    } else {
        TreeCoefficients coeffs(fam, *res.structure);
        coeffs.set_budget(config.budget);
        const int D = config.D < 0 ? config.K + 2 : config.D;

        if (config.N_max > 0) {
            try {
                res.estimate =
                    tree_sum_estimate(coeffs, config.N_max, config.N_max + 2,
                                      config.threads, config.budget,
                                      &res.estimate_leak);
            } catch (const BudgetError& e) {
                res.notes.push_back(std::string("tree-sum estimate skipped: ") +
                                    e.what());
            }
        }

        const auto& removable = res.structure->removable;
        if (removable.empty()) {
            res.notes.push_back(
                "no removable index: the series equation does not apply");
        } else if (res.structure->nonremovable.empty()) {
            // Every operator is root-only, so products collapse to scalars
            // and the series has the single coefficient
            //   b_0 = sum_u C_empty(u)^{a_1}.
            KahanSum r0;
            for (int u = 0; u < m1; ++u) {
                r0.add(power_or_zero(coeffs.value(u, TreeWord{}),
                                     fam.alphabet.exponent(1)));
            }
            res.series.L = 1;
            res.series.alpha = fam.alphabet.exponent(1);
            res.series.c = {r0.value()};
            res.solve.r = r0.value();
            res.solve.residual = 0.0;
            res.solve.iterations = 0;
            res.solve.bracket_lo = res.solve.bracket_hi = res.solve.r;
            res.dim = std::log(res.solve.r) / logm1;
            res.lower_bounds = companion_lower_bounds(res.series, config.kmax);
            res.applicable = true;
            res.all_removable = true;
            res.notes.push_back(
                "every index is removable: the series degenerates at k = 0");
        } else {
            const int D_cert = config.cert_depth < 0 ? std::min(D, 10)
                                                     : config.cert_depth;
            // The coefficient cache charges work only on misses, so growing
            // K one level at a time costs about one full-size enumeration in
            // total and stops at the largest truncation the budget allows.
            auto grow_series =
                [&](int u, bool note_clamp) -> std::optional<CoefficientSeries> {
                std::optional<CoefficientSeries> best;
                for (int k = 0; k <= config.K; ++k) {
                    try {
                        best = b_series(coeffs, u, k, D, config.threads,
                                        config.budget);
                    } catch (const BudgetError&) {
                        if (note_clamp) {
                            // A certified index whose series cannot reach even
                            // level 0 means the budget is unusably small.
                            if (!best) throw;
                            res.budget_clamped = true;
                            res.notes.push_back(
                                "budget-clamped: series truncation stopped at "
                                "K = " +
                                std::to_string(best->K()) +
                                " by the work budget");
                        }
                        break;
                    }
                }
                return best;
            };

            const auto candidates = tail_candidates(m1);
            bool solve_failed = false;
            for (int u : removable) {
                if (res.applicable) {
                    // Cross-check: solve again from another removable index.
                    try {
                        std::optional<KeyString> tail;
                        for (const auto& t : candidates) {
                            if (check_l1_increasing(coeffs, u, t, D_cert).ok) {
                                tail = t;
                                break;
                            }
                        }
                        if (!tail) continue;
                        auto alt = grow_series(u, false);
                        if (!alt) continue;
                        const double r_alt = solve_series_root(*alt).r;
                        res.alternate_roots.emplace_back(u, r_alt);
                        if (std::abs(r_alt - res.solve.r) >
                            1e-6 * std::max(1.0, res.solve.r)) {
                            res.notes.push_back(
                                "removable index " + std::to_string(u) +
                                " yields root " + std::to_string(r_alt) +
                                ", disagreeing with " +
                                std::to_string(res.solve.r));
                        }
                    } catch (const std::runtime_error& e) {
                        res.notes.push_back(
                            "cross-check with removable index " +
                            std::to_string(u) + " failed: " + e.what());
                    }
                    continue;
                }

                bool found = false;
                try {
                    for (const auto& t : candidates) {
                        auto att = check_l1_increasing(coeffs, u, t, D_cert);
                        res.l1_attempts.push_back(att);
                        if (att.ok) {
                            res.l1_tail = t;
                            found = true;
                            break;
                        }
                    }
                } catch (const BudgetError& e) {
                    res.notes.push_back(
                        std::string("column-sum certification skipped: ") +
                        e.what());
                }
                if (!found) continue;

                auto grown = grow_series(u, true);
                if (!grown) continue;
                try {
                    res.series = std::move(*grown);
                    res.solve = solve_series_root(res.series);
                    res.dim = std::log(res.solve.r) / logm1;
                    res.lower_bounds =
                        companion_lower_bounds(res.series, config.kmax);
                    res.removable_used = u;
                    res.applicable = true;
                } catch (const MethodError& e) {
                    res.notes.push_back(std::string("series root rejected: ") +
                                        e.what());
                    res.l1_tail.reset();
                    solve_failed = true;
                    break;
                }
            }
            if (!res.applicable && !solve_failed) {
                res.notes.push_back(
                    "no removable index satisfies the column-sum condition; "
                    "the series equation was not certified");
            }
        }
    }

    if (config.oracle_N > 0) {
        try {
            res.oracle = brute_dim3_sweep(fam, config.oracle_N,
                                          config.oracle_budget, config.threads);
            if (res.applicable && res.oracle.extrapolated) {
                res.oracle_delta = res.dim - *res.oracle.extrapolated;
            }
        } catch (const BudgetError& e) {
            res.notes.push_back(std::string("oracle sweep skipped: ") + e.what());
        }
    }
    return res;
}

}  // namespace soficdim
