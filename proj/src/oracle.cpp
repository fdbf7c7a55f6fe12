#include "soficdim/oracle.hpp"

#include "soficdim/accum.hpp"
#include "soficdim/errors.hpp"
#include "soficdim/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace soficdim {

namespace {

BigInt ipow(int base, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// n^expo with n a non-negative big integer; 0^expo = 0 (expo > 0 always:
// the alphabet invariants force every exponent into (0, 1]).
double pow_of_bigint(const BigInt& n, double expo) {
    if (n == 0) return 0.0;
    return std::exp(expo * log_value(n));
}

void charge(std::atomic<long long>& produced, long long budget) {
    const long long used = produced.fetch_add(1) + 1;
    if (budget >= 0 && used > budget)
        throw BudgetError("enumeration exceeded the product budget (" +
                          std::to_string(budget) + ")");
}

// ---- 2D enumeration -------------------------------------------------------

using NormCounts = std::map<BigInt, long long>;

void dim2_descend(const AdjacencyFamily& fam, const IntMatrix& prod, int depth,
                  int N, std::vector<NormCounts>& levels,
                  std::atomic<long long>& produced, long long budget) {
    charge(produced, budget);
    if (prod.is_zero()) return;  // the whole subtree stays zero
    ++levels[static_cast<size_t>(depth)][prod.entry_sum()];
    if (depth == N) return;
    const int syms = fam.alphabet.key_count();
    for (int sym = 0; sym < syms; ++sym)
        dim2_descend(fam, prod * fam.matrix(sym), depth + 1, N, levels,
                     produced, budget);
}

// Norm multisets for every depth 1..N, products extended on the right.
std::vector<NormCounts> dim2_levels(const AdjacencyFamily& fam, int N,
                                    long long budget, int threads) {
    const int syms = fam.alphabet.key_count();
    if (budget >= 0 && ipow(syms, N) > budget)
        throw BudgetError("|I_1|^N = " + ipow(syms, N).str() +
                          " exceeds the product budget");
    std::atomic<long long> produced{0};
    std::vector<std::vector<NormCounts>> partial(
        static_cast<size_t>(syms),
        std::vector<NormCounts>(static_cast<size_t>(N) + 1));
    run_indexed_tasks(syms, threads, [&](int first) {
        dim2_descend(fam, fam.matrix(first), 1, N,
                     partial[static_cast<size_t>(first)], produced, budget);
    });
    std::vector<NormCounts> levels(static_cast<size_t>(N) + 1);
    for (int first = 0; first < syms; ++first)
        for (int depth = 1; depth <= N; ++depth)
            for (const auto& [norm, cnt] :
                 partial[static_cast<size_t>(first)][static_cast<size_t>(depth)])
                levels[static_cast<size_t>(depth)][norm] += cnt;
    return levels;
}

// Sum of count * norm^alpha in ascending norm order: deterministic.
double counts_power_sum(const NormCounts& counts, double alpha) {
    KahanSum acc;
    for (const auto& [norm, cnt] : counts)
        acc.add(static_cast<double>(cnt) * pow_of_bigint(norm, alpha));
    return acc.value();
}

EstimateSequence finish_sequence(std::vector<std::pair<int, double>> vals) {
    EstimateSequence es;
    es.values = std::move(vals);
    std::vector<double> seq;
    seq.reserve(es.values.size());
    for (const auto& [n, v] : es.values) seq.push_back(v);
    es.extrapolated = aitken_extrapolate(seq);
    if (es.extrapolated && !es.values.empty())
        es.spread = std::abs(es.values.back().second - *es.extrapolated);
    return es;
}

EstimateSequence dim2_core(const AdjacencyFamily& fam, int N_max,
                           long long budget, int threads) {
    if (fam.alphabet.dim != 2)
        throw MethodError("2D enumeration requires a 2D family");
    if (N_max < 1) throw std::invalid_argument("N must be >= 1");
    const double alpha = fam.alphabet.exponent(1);
    const double logm1 = std::log(static_cast<double>(fam.alphabet.m[0]));
    const auto levels = dim2_levels(fam, N_max, budget, threads);
    std::vector<std::pair<int, double>> vals;
    for (int N = 1; N <= N_max; ++N) {
        const double S =
            counts_power_sum(levels[static_cast<size_t>(N)], alpha);
        if (S <= 0.0) break;  // every product vanished; deeper levels too
        vals.emplace_back(N, std::log(S) / (N * logm1));
    }
    return finish_sequence(std::move(vals));
}

// ---- 3D enumeration -------------------------------------------------------

struct Dim3Accum {
    std::vector<KahanSum> totals;  // index by outer depth 1..N
};

void dim3_descend(const AdjacencyFamily& fam, int sym,
                  const std::vector<IntMatrix>& live_in, int depth, int N,
                  double a1, double a2, Dim3Accum& acc,
                  std::atomic<long long>& produced, long long budget) {
    const int m2 = fam.alphabet.m[1];
    std::vector<IntMatrix> live_out;
    live_out.reserve(live_in.size());
    for (const auto& P : live_in)
        for (int t = 0; t < m2; ++t) {
            const IntMatrix& A = fam.matrix(sym * m2 + t);
            if (A.is_zero()) continue;  // pruned: the product is zero
            charge(produced, budget);
            IntMatrix Q = P * A;
            if (!Q.is_zero()) live_out.push_back(std::move(Q));
        }
    KahanSum inner;
    for (const auto& Q : live_out) inner.add(pow_of_bigint(Q.entry_sum(), a2));
    const double in = inner.value();
    if (in > 0.0)
        acc.totals[static_cast<size_t>(depth)].add(std::exp(a1 * std::log(in)));
    if (depth == N || live_out.empty()) return;
    const int m1 = fam.alphabet.m[0];
    for (int next = 0; next < m1; ++next)
        dim3_descend(fam, next, live_out, depth + 1, N, a1, a2, acc, produced,
                     budget);
}

EstimateSequence dim3_core(const AdjacencyFamily& fam, int N_max,
                           long long budget, int threads) {
    if (fam.alphabet.dim != 3)
        throw MethodError("3D enumeration requires a 3D family");
    if (N_max < 1) throw std::invalid_argument("N must be >= 1");
    const double a1 = fam.alphabet.exponent(1);
    const double a2 = fam.alphabet.exponent(2);
    const double logm1 = std::log(static_cast<double>(fam.alphabet.m[0]));
    const int m1 = fam.alphabet.m[0];
    std::atomic<long long> produced{0};
    std::vector<Dim3Accum> partial(static_cast<size_t>(m1));
    for (auto& p : partial)
        p.totals.assign(static_cast<size_t>(N_max) + 1, KahanSum{});
    const std::vector<IntMatrix> start{IntMatrix::identity(fam.n)};
    run_indexed_tasks(m1, threads, [&](int first) {
        dim3_descend(fam, first, start, 1, N_max, a1, a2,
                     partial[static_cast<size_t>(first)], produced, budget);
    });
    std::vector<std::pair<int, double>> vals;
    for (int N = 1; N <= N_max; ++N) {
        KahanSum total;
        for (int first = 0; first < m1; ++first)
            total.add(partial[static_cast<size_t>(first)]
                          .totals[static_cast<size_t>(N)]
                          .value());
        const double S = total.value();
        if (S <= 0.0) break;
        vals.emplace_back(N, std::log(S) / (N * logm1));
    }
    return finish_sequence(std::move(vals));
}

}  // namespace

std::optional<double> aitken_extrapolate(const std::vector<double>& seq) {
    for (int i = static_cast<int>(seq.size()) - 3; i >= 0; --i) {
        const double x0 = seq[static_cast<size_t>(i)];
        const double x1 = seq[static_cast<size_t>(i) + 1];
        const double x2 = seq[static_cast<size_t>(i) + 2];
        if (!std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(x2))
            continue;
        const double d2 = x2 - 2.0 * x1 + x0;
        if (std::abs(d2) > 1e-14) {
            const double d1 = x2 - x1;
            return x2 - d1 * d1 / d2;
        }
    }
    return std::nullopt;
}

std::map<BigInt, long long> product_norm_counts(const AdjacencyFamily& fam,
                                                int N, bool extend_left,
                                                long long budget) {
    if (fam.alphabet.dim != 2)
        throw MethodError("norm multisets are defined for 2D families");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    const int syms = fam.alphabet.key_count();
    NormCounts counts;
    std::atomic<long long> produced{0};
    // Plain stack DFS; `prod` is the product over the symbols chosen so far,
    // grown on the right (prefix order) or on the left (suffix order).
    struct Node {
        IntMatrix prod;
        int depth;
    };
    std::vector<Node> stack;
    for (int sym = syms - 1; sym >= 0; --sym)
        stack.push_back({fam.matrix(sym), 1});
    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        charge(produced, budget);
        if (node.prod.is_zero()) continue;
        if (node.depth == N) {
            ++counts[node.prod.entry_sum()];
            continue;
        }
        for (int sym = syms - 1; sym >= 0; --sym)
            stack.push_back({extend_left ? fam.matrix(sym) * node.prod
                                         : node.prod * fam.matrix(sym),
                             node.depth + 1});
    }
    return counts;
}

double brute_dim2(const AdjacencyFamily& fam, int N, long long budget,
                  int threads) {
    const EstimateSequence es = dim2_core(fam, N, budget, threads);
    if (es.values.empty() || es.values.back().first != N)
        return -std::numeric_limits<double>::infinity();
    return es.values.back().second;
}

EstimateSequence brute_dim2_sweep(const AdjacencyFamily& fam, int N_max,
                                  long long budget, int threads) {
    return dim2_core(fam, N_max, budget, threads);
}

double brute_dim3(const AdjacencyFamily& fam, int N, long long budget,
                  int threads) {
    const EstimateSequence es = dim3_core(fam, N, budget, threads);
    if (es.values.empty() || es.values.back().first != N)
        return -std::numeric_limits<double>::infinity();
    return es.values.back().second;
}

EstimateSequence brute_dim3_sweep(const AdjacencyFamily& fam, int N_max,
                                  long long budget, int threads) {
    return dim3_core(fam, N_max, budget, threads);
}

std::vector<double> phi2_direct(const AdjacencyFamily& fam, const KeyString& s,
                                const RowDirection& v, int N) {
    if (fam.alphabet.dim != 2)
        throw MethodError("the 2D tower vector requires a 2D family");
    const int L = static_cast<int>(s.size());
    if (N < L) throw std::invalid_argument("N must be at least |s|");
    const double alpha = fam.alphabet.exponent(1);
    const IntMatrix Ps = product_over_string(fam.by_key, s, fam.n);

    std::vector<KahanSum> level(static_cast<size_t>(N) + 1);
    const int syms = fam.alphabet.key_count();

    // DFS over u; a node at depth j holds the row v * P(u), |u| = j, and
    // contributes [row * P(s) * e]^alpha to entry N - L - j.
    struct Node {
        std::vector<BigInt> row;
        int depth;
    };
    std::vector<Node> stack;
    stack.push_back({v.v, 0});
    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        const std::vector<BigInt> tail = row_times_matrix(node.row, Ps);
        BigInt val = 0;
        for (const auto& x : tail) val += x;
        level[static_cast<size_t>(N - L - node.depth)].add(
            pow_of_bigint(val, alpha));
        if (node.depth == N - L) continue;
        for (int sym = syms - 1; sym >= 0; --sym) {
            std::vector<BigInt> next =
                row_times_matrix(node.row, fam.matrix(sym));
            bool zero = true;
            for (const auto& x : next)
                if (x != 0) {
                    zero = false;
                    break;
                }
            if (zero) continue;  // the whole subtree contributes 0
            stack.push_back({std::move(next), node.depth + 1});
        }
    }

    std::vector<double> phi(static_cast<size_t>(N) + 1, 0.0);
    for (int k = 0; k <= N - L; ++k)
        phi[static_cast<size_t>(k)] = level[static_cast<size_t>(k)].value();
    BigInt ve = 0;
    for (const auto& x : v.v) ve += x;
    phi[static_cast<size_t>(N)] = pow_of_bigint(ve, alpha);
    return phi;
}

TreeVector phi3_direct(const AdjacencyFamily& fam,
                       const RecursiveStructure& st, const KeyString& s) {
    if (fam.alphabet.dim != 3)
        throw MethodError("the 3D tower vector requires a 3D family");
    const int N = static_cast<int>(s.size());
    if (N == 0) return TreeVector::unit();
    const double a2 = fam.alphabet.exponent(2);
    const int m2 = fam.alphabet.m[1];

    auto suffix_in_J = [&](int from) {
        for (int i = from; i < N; ++i)
            if (st.is_removable(s[static_cast<size_t>(i)])) return false;
        return true;
    };
    auto suffix_word = [&](int from) {
        TreeWord w;
        for (int i = from; i < N; ++i)
            w.push_back(static_cast<char>(s[static_cast<size_t>(i)]));
        return w;
    };

    TreeVector out;
    BigInt ve = 0;
    for (const auto& x : st.v.v) ve += x;
    if (suffix_in_J(0)) out.set(suffix_word(0), pow_of_bigint(ve, a2));

    for (int k = 0; k < N; ++k) {
        if (k >= 1 && !suffix_in_J(N - k)) continue;
        const int M = N - k - 1;  // prefix whose completions are summed over
        const int u = s[static_cast<size_t>(M)];
        const auto& q = st.q_keys[static_cast<size_t>(u)];
        KahanSum acc;

        // DFS over all I_2-completions w of s_1..s_M, carrying v * P(w).
        struct Node {
            std::vector<BigInt> row;
            int depth;
        };
        std::vector<Node> stack;
        stack.push_back({st.v.v, 0});
        while (!stack.empty()) {
            Node node = std::move(stack.back());
            stack.pop_back();
            if (node.depth == M) {
                for (int key : q) {
                    const std::vector<BigInt> img =
                        row_times_matrix(node.row, fam.matrix(key));
                    BigInt val = 0;
                    for (const auto& x : img) val += x;
                    acc.add(pow_of_bigint(val, a2));
                }
                continue;
            }
            const int sym = s[static_cast<size_t>(node.depth)];
            for (int t = m2 - 1; t >= 0; --t) {
                const IntMatrix& A = fam.matrix(sym * m2 + t);
                if (A.is_zero()) continue;
                std::vector<BigInt> next = row_times_matrix(node.row, A);
                bool zero = true;
                for (const auto& x : next)
                    if (x != 0) {
                        zero = false;
                        break;
                    }
                if (zero) continue;
                stack.push_back({std::move(next), node.depth + 1});
            }
        }
        out.set(suffix_word(N - k), acc.value());
    }
    return out;
}

namespace {

RealMatrix to_real(const IntMatrix& A) {
    RealMatrix R;
    R.n = A.size();
    R.a.resize(static_cast<size_t>(R.n) * static_cast<size_t>(R.n));
    for (int i = 0; i < R.n; ++i)
        for (int j = 0; j < R.n; ++j)
            R.at(i, j) = A.at(i, j).convert_to<double>();
    return R;
}

// Dominant eigendirection by plain power iteration, normalized to unit max
// entry. nullopt when the iterate collapses (nilpotent) or fails to settle.
std::optional<std::vector<double>> perron_vector(const IntMatrix& A) {
    const int n = A.size();
    const RealMatrix R = to_real(A);
    std::vector<double> x(static_cast<size_t>(n), 1.0 / n);
    for (int iter = 0; iter < 20000; ++iter) {
        std::vector<double> y(static_cast<size_t>(n), 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                y[static_cast<size_t>(i)] +=
                    R.at(i, j) * x[static_cast<size_t>(j)];
        double norm = 0.0;
        for (double t : y) norm += std::abs(t);
        if (norm < 1e-300) return std::nullopt;  // image collapsed
        double diff = 0.0;
        for (int i = 0; i < n; ++i) {
            y[static_cast<size_t>(i)] /= norm;
            diff = std::max(diff, std::abs(y[static_cast<size_t>(i)] -
                                           x[static_cast<size_t>(i)]));
        }
        x = std::move(y);
        if (diff < 1e-14) {
            double top = 0.0;
            for (double t : x) top = std::max(top, std::abs(t));
            for (double& t : x) t /= top;
            return x;
        }
    }
    return std::nullopt;
}

double spectral_closed_form(const AdjacencyFamily& fam) {
    const double logm1 = std::log(static_cast<double>(fam.alphabet.m[0]));
    if (fam.alphabet.dim == 2) {
        const double alpha = fam.alphabet.exponent(1);
        KahanSum S;
        for (int key = 0; key < fam.alphabet.key_count(); ++key) {
            const IntMatrix& A = fam.matrix(key);
            if (A.is_zero()) continue;
            const double rho = spectral_radius(to_real(A)).radius;
            if (rho > 0.0) S.add(std::exp(alpha * std::log(rho)));
        }
        return std::log(S.value()) / logm1;
    }
    const double a1 = fam.alphabet.exponent(1);
    const double a2 = fam.alphabet.exponent(2);
    const int m2 = fam.alphabet.m[1];
    KahanSum S;
    for (int sym = 0; sym < fam.alphabet.m[0]; ++sym) {
        KahanSum inner;
        for (int t = 0; t < m2; ++t) {
            const IntMatrix& A = fam.matrix(sym * m2 + t);
            if (A.is_zero()) continue;
            const double rho = spectral_radius(to_real(A)).radius;
            if (rho > 0.0) inner.add(std::exp(a2 * std::log(rho)));
        }
        if (inner.value() > 0.0)
            S.add(std::exp(a1 * std::log(inner.value())));
    }
    return std::log(S.value()) / logm1;
}

}  // namespace

std::optional<TrivialCase> trivial_case_dimension(const AdjacencyFamily& fam) {
    const int keys = fam.alphabet.key_count();
    bool any_nonzero = false;
    for (int k = 0; k < keys; ++k)
        if (!fam.matrix(k).is_zero()) any_nonzero = true;
    if (!any_nonzero) return std::nullopt;

    bool commuting = true;
    for (int i = 0; i < keys && commuting; ++i)
        for (int j = i + 1; j < keys && commuting; ++j)
            if (!(fam.matrix(i) * fam.matrix(j) ==
                  fam.matrix(j) * fam.matrix(i)))
                commuting = false;
    if (commuting) {
        IntMatrix sum = IntMatrix(fam.n);
        for (int k = 0; k < keys; ++k) sum += fam.matrix(k);
        if (is_primitive(sum))
            return TrivialCase{"commuting", spectral_closed_form(fam)};
    }

    std::optional<std::vector<double>> ref;
    for (int k = 0; k < keys; ++k) {
        const IntMatrix& A = fam.matrix(k);
        if (A.is_zero()) continue;
        const auto vec = perron_vector(A);
        if (!vec) return std::nullopt;
        if (!ref) {
            ref = vec;
            continue;
        }
        for (int i = 0; i < fam.n; ++i)
            if (std::abs((*vec)[static_cast<size_t>(i)] -
                         (*ref)[static_cast<size_t>(i)]) > 1e-9)
                return std::nullopt;
    }
    if (!ref) return std::nullopt;
    return TrivialCase{"common-eigenvector", spectral_closed_form(fam)};
}

}  // namespace soficdim
