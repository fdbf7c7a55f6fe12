#include "soficdim/dim2.hpp"

#include "soficdim/accum.hpp"
#include "soficdim/errors.hpp"
#include "soficdim/exclusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace soficdim {

namespace {

// out := v * A without reallocating (the hot loops reuse depth-indexed
// buffers; cpp_int keeps small values inline, so this stays allocation-free
// once warm).
void row_mul_into(const std::vector<BigInt>& v, const IntMatrix& A,
                  std::vector<BigInt>& out) {
    const int n = A.size();
    out.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        BigInt acc = 0;
        for (int i = 0; i < n; ++i)
            if (v[static_cast<size_t>(i)] != 0)
                acc += v[static_cast<size_t>(i)] * A.at(i, j);
        out[static_cast<size_t>(j)] = std::move(acc);
    }
}

bool all_zero(const std::vector<BigInt>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

struct TailContext {
    const AdjacencyFamily* fam = nullptr;
    const ExclusionAutomaton* aut = nullptr;
    IntMatrix Ps;                // product over the tail string
    std::vector<BigInt> v;       // its image direction
    int pivot = 0;               // first nonzero coordinate of v
    double alpha = 0.0;
};

// Exact J with row * Ps == J * v, verified on every coordinate.
BigInt scalar_from_row(const TailContext& ctx, const std::vector<BigInt>& row,
                       std::vector<BigInt>& scratch) {
    row_mul_into(row, ctx.Ps, scratch);
    const BigInt& vp = ctx.v[static_cast<size_t>(ctx.pivot)];
    BigInt J = scratch[static_cast<size_t>(ctx.pivot)] / vp;
    for (size_t i = 0; i < scratch.size(); ++i)
        if (scratch[i] != J * ctx.v[i])
            throw ProportionalityError(
                "tail image is not proportional to its direction; the "
                "rank-1 string or direction is invalid");
    return J;
}

// Enumerates one subtree of the avoiding strings of length k, collecting
// J_u^alpha for every leaf. Rows with all entries zero are pruned: every
// continuation has J = 0 and contributes nothing.
struct LevelWalker {
    const TailContext* ctx;
    int k;
    std::vector<std::vector<BigInt>> rows;  // rows[d] = v * P(u_1..u_d)
    std::vector<BigInt> scratch;
    std::vector<double> values;

    LevelWalker(const TailContext& c, int k_)
        : ctx(&c), k(k_), rows(static_cast<size_t>(k_) + 1) {}

    void walk(int state, int depth) {
        if (depth == k) {
            const BigInt J =
                scalar_from_row(*ctx, rows[static_cast<size_t>(depth)],
                                scratch);
            if (J > 0)
                values.push_back(std::exp(ctx->alpha * log_value(J)));
            return;
        }
        const int sigma = ctx->aut->alphabet_size();
        for (int sym = 0; sym < sigma; ++sym) {
            const int ns = ctx->aut->next(state, sym);
            if (ns == ctx->aut->reject_state()) continue;
            row_mul_into(rows[static_cast<size_t>(depth)],
                         ctx->fam->matrix(sym),
                         rows[static_cast<size_t>(depth) + 1]);
            if (all_zero(rows[static_cast<size_t>(depth) + 1])) continue;
            walk(ns, depth + 1);
        }
    }
};

// C_k: all leaf values merged in first-symbol order, then summed ascending.
double coefficient_level(const TailContext& ctx, int k, int threads) {
    std::vector<double> values;
    if (k == 0) {
        std::vector<BigInt> scratch;
        const BigInt J = scalar_from_row(ctx, ctx.v, scratch);
        if (J > 0) values.push_back(std::exp(ctx.alpha * log_value(J)));
    } else {
        const int sigma = ctx.aut->alphabet_size();
        std::vector<LevelWalker> partial;
        partial.reserve(static_cast<size_t>(sigma));
        for (int sym = 0; sym < sigma; ++sym) partial.emplace_back(ctx, k);
        run_indexed_tasks(sigma, threads, [&](int sym) {
            const int ns = ctx.aut->next(0, sym);
            if (ns == ctx.aut->reject_state()) return;
            LevelWalker& w = partial[static_cast<size_t>(sym)];
            w.rows[0] = ctx.v;
            row_mul_into(w.rows[0], ctx.fam->matrix(sym), w.rows[1]);
            if (all_zero(w.rows[1])) return;
            w.walk(ns, 1);
        });
        size_t total = 0;
        for (const auto& w : partial) total += w.values.size();
        values.reserve(total);
        for (auto& w : partial)
            values.insert(values.end(), w.values.begin(), w.values.end());
    }
    std::sort(values.begin(), values.end());
    KahanSum acc;
    for (double x : values) acc.add(x);
    return acc.value();
}

TailContext make_context(const AdjacencyFamily& fam, const KeyString& s,
                         const RowDirection& v,
                         const ExclusionAutomaton& aut) {
    TailContext ctx;
    ctx.fam = &fam;
    ctx.aut = &aut;
    ctx.Ps = product_over_string(fam.by_key, s, fam.n);
    ctx.v = v.v;
    while (ctx.v[static_cast<size_t>(ctx.pivot)] == 0) ++ctx.pivot;
    ctx.alpha = fam.alphabet.exponent(1);
    return ctx;
}

}  // namespace

CoefficientSeries coefficient_series(const AdjacencyFamily& fam,
                                     const KeyString& s, const RowDirection& v,
                                     int K, int threads, long long budget,
                                     long long* enumerated) {
    if (fam.alphabet.dim != 2)
        throw MethodError("the coefficient series requires a 2D family");
    if (K < 0) throw std::invalid_argument("K must be >= 0");
    const ExclusionAutomaton aut(s, fam.alphabet.key_count());
    const TailContext ctx = make_context(fam, s, v, aut);

    CoefficientSeries out;
    out.L = static_cast<int>(s.size());
    out.alpha = ctx.alpha;
    BigInt used = 0;
    for (int k = 0; k <= K; ++k) {
        const BigInt cnt = aut.count_avoiding(k);
        if (budget >= 0 && used + cnt > budget)
            throw BudgetError("level " + std::to_string(k) + " needs " +
                              cnt.str() + " strings; cumulative budget " +
                              std::to_string(budget) + " exceeded");
        used += cnt;
        out.c.push_back(coefficient_level(ctx, k, threads));
    }
    out.growth_estimate = coefficient_growth(out);
    if (enumerated) *enumerated = used.convert_to<long long>();
    return out;
}

std::vector<double> tower_step(const CoefficientSeries& s,
                               const std::vector<double>& phi) {
    std::vector<double> out(phi.size() + 1, 0.0);
    KahanSum head;
    for (size_t j = static_cast<size_t>(s.L) - 1; j < phi.size(); ++j) {
        const size_t idx = j - (static_cast<size_t>(s.L) - 1);
        if (idx >= s.c.size()) break;
        head.add(s.c[idx] * phi[j]);
    }
    out[0] = head.value();
    for (size_t i = 1; i < out.size(); ++i) out[i] = phi[i - 1];
    return out;
}

Dim2Result dimension2d(const AdjacencyFamily& fam, const Dim2Config& config) {
    if (fam.alphabet.dim != 2)
        throw MethodError("dimension2d requires a 2D family");
    Dim2Result res;

    IntMatrix sum(fam.n);
    for (int key = 0; key < fam.alphabet.key_count(); ++key)
        sum += fam.matrix(key);
    res.primitive = is_primitive(sum);
    if (!res.primitive && config.primitivity_strict)
        throw MethodError("the summed key matrix is not primitive");

    res.tail = find_rank1_string(fam.by_key, fam.n, config.max_string_len,
                                 config.search_budget);

    if (res.tail) {
        const ExclusionAutomaton aut(res.tail->word,
                                     fam.alphabet.key_count());
        const TailContext ctx =
            make_context(fam, res.tail->word, res.tail->direction, aut);
        CoefficientSeries series;
        series.L = static_cast<int>(res.tail->word.size());
        series.alpha = ctx.alpha;

        constexpr int kHardCap = 200;
        BigInt used = 0;
        for (int k = 0;; ++k) {
            if (k > kHardCap) {
                res.budget_clamped = true;
                break;
            }
            const BigInt cnt = aut.count_avoiding(k);
            if (cnt == 0) break;  // no deeper avoiding strings exist
            if (config.budget >= 0 && used + cnt > config.budget) {
                if (series.c.empty())
                    throw BudgetError(
                        "coefficient enumeration exceeded its budget of " +
                        std::to_string(config.budget) +
                        " before the first level finished");
                res.budget_clamped = true;
                break;
            }
            used += cnt;
            series.c.push_back(coefficient_level(ctx, k, config.threads));
            if (k < config.K) continue;
            // Tail rule on a fresh root estimate of the series so far.
            const double ck = series.c.back();
            if (ck <= 0.0) break;
            CoefficientSeries probe = series;  // growth guard off mid-loop
            const RootSolve est = solve_series_root(probe);
            const double logr = std::log(est.r);
            if (std::log(ck) - (k + series.L) * logr <
                std::log(1e-14) + series.L * logr)
                break;
        }

        series.growth_estimate = coefficient_growth(series);
        res.series = series;
        res.strings_enumerated = used.convert_to<long long>();
        res.solve = solve_series_root(series);
        res.dim = std::log(res.solve.r) /
                  std::log(static_cast<double>(fam.alphabet.m[0]));
        res.lower_bounds = companion_lower_bounds(series, config.kmax);
        res.applicable = true;
    }

    if (config.oracle_N > 0) {
        res.oracle = brute_dim2_sweep(fam, config.oracle_N,
                                      config.oracle_budget, config.threads);
        if (res.applicable && res.oracle.extrapolated)
            res.oracle_delta = res.dim - *res.oracle.extrapolated;
    }
    return res;
}

}  // namespace soficdim
