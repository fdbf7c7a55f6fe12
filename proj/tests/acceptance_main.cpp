// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the process exits non-zero if any criterion fails. Tolerances are
// pinned in-line next to each check.

#include "soficdim/bigmatrix.hpp"
#include "soficdim/dim2.hpp"
#include "soficdim/dim3.hpp"
#include "soficdim/family.hpp"
#include "soficdim/oracle.hpp"
#include "soficdim/tree.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace soficdim;
using nlohmann::json;

namespace {

const std::string kData = SOFICDIM_DATA_DIR;
const std::string kCli = SOFICDIM_CLI_PATH;

struct Checker {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void expect_close(double got, double want, double tol,
                      const std::string& what) {
        if (!(std::abs(got - want) <= tol)) {
            std::ostringstream os;
            os.precision(17);
            os << what << ": got " << got << ", want " << want << " +/- "
               << tol;
            failures.push_back(os.str());
        }
    }
};

struct Outcome {
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

int g_failures = 0;

void run_criterion(int id, const std::string& label,
                   double time_limit_seconds,
                   const std::function<void(Checker&)>& body) {
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (secs > time_limit_seconds) {
        std::ostringstream os;
        os << "took " << secs << "s, limit " << time_limit_seconds << "s";
        c.failures.push_back(os.str());
    }
    std::ostringstream line;
    line.precision(3);
    if (c.failures.empty()) {
        line << "PASS " << id << ": " << label << " (" << secs << "s)";
    } else {
        ++g_failures;
        line << "FAIL " << id << ": " << label << " (" << secs << "s)";
        for (const auto& f : c.failures) line << "\n    - " << f;
    }
    std::cout << line.str() << std::endl;
}

AdjacencyFamily load(const std::string& name) {
    return load_family_file(kData + "/" + name).family;
}

IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
    IntMatrix m(static_cast<int>(rows.size()));
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (long long v : row) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

// Runs the command-line tool, returning its exit code and (through `doc`)
// the JSON report it wrote.
int run_cli_report(const std::string& args, const std::string& out_name,
                   json* doc) {
    const std::string out =
        (std::filesystem::temp_directory_path() / out_name).string();
    const std::string cmd =
        kCli + " " + args + " --out " + out + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    const int code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    if (doc) {
        std::ifstream in(out);
        if (in.good())
            *doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
    }
    return code;
}

bool has_flag(const json& doc, const std::string& needle) {
    if (!doc.contains("flags")) return false;
    for (const auto& f : doc.at("flags"))
        if (f.get<std::string>().find(needle) != std::string::npos)
            return true;
    return false;
}

double rel_gap(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// Shared across criteria: pipeline results and CLI report documents.
Dim2Result g_ex1;
Dim2Result g_ex2;
Dim3Result g_ex3;
Dim3Result g_ex4;
json g_doc41, g_doc42, g_doc43, g_doc44;

}  // namespace

int main() {
    std::cout << "acceptance: exact dimensions of sofic self-affine sets\n";

    run_criterion(1, "graph compilation matches hand-built matrices", 1.0,
                  [](Checker& c) {
        AdjacencyFamily f41 = load("ex41.graph");
        c.expect(f41.n == 3, "ex41 vertex count");
        c.expect(f41.matrix(0) ==
                     from_rows({{2, 0, 0}, {0, 1, 0}, {0, 1, 0}}),
                 "ex41 key-0 matrix");
        c.expect(f41.matrix(1) ==
                     from_rows({{1, 1, 1}, {0, 0, 0}, {2, 1, 1}}),
                 "ex41 key-1 matrix");

        AdjacencyFamily f43 = load("ex43.graph");
        c.expect(f43.n == 2, "ex43 vertex count");
        c.expect(f43.alphabet.key_count() == 6, "ex43 key count");
        c.expect(f43.matrix(0) == from_rows({{0, 0}, {0, 1}}),
                 "ex43 key (0,0)");
        c.expect(f43.matrix(3) == from_rows({{0, 1}, {0, 0}}),
                 "ex43 key (1,0)");
        c.expect(f43.matrix(5) == from_rows({{1, 0}, {1, 1}}),
                 "ex43 key (1,2)");
        for (int key : {1, 2, 4})
            c.expect(f43.matrix(key).is_zero(),
                     "ex43 key " + std::to_string(key) + " should be zero");

        // The matrix-form twins compile to the same families.
        c.expect(load("ex41.matrix") == f41, "ex41 matrix twin");
        c.expect(load("ex43.matrix") == f43, "ex43 matrix twin");
    });

    run_criterion(2, "rank-1 tail strings are found with their directions",
                  1.0, [](Checker& c) {
        AdjacencyFamily f1 = load("ex41.matrix");
        auto hit1 = find_rank1_string(f1.by_key, f1.n, 8);
        c.expect(hit1.has_value(), "ex41 search");
        if (hit1) {
            c.expect(hit1->word == KeyString{0, 1}, "ex41 tail word 01");
            c.expect(hit1->direction.v == std::vector<BigInt>{1, 1, 1},
                     "ex41 direction (1,1,1)");
        }
        AdjacencyFamily f2 = load("ex42.matrix");
        auto hit2 = find_rank1_string(f2.by_key, f2.n, 8);
        c.expect(hit2.has_value(), "ex42 search");
        if (hit2) {
            c.expect(hit2->word == KeyString{0}, "ex42 tail word 0");
            c.expect(hit2->direction.v == std::vector<BigInt>{1, 0},
                     "ex42 direction (1,0)");
        }
    });

    run_criterion(3, "planar tower root, companion bounds and brute force "
                     "agree", 300.0, [](Checker& c) {
        {
            Dim2Config cfg;
            cfg.oracle_N = 14;
            g_ex1 = dimension2d(load("ex41.matrix"), cfg);
            c.expect(g_ex1.applicable, "ex41 applicable");
            const double dim_tower = g_ex1.dim;
            const double dim_comp =
                std::log2(g_ex1.lower_bounds.back().second);
            c.expect(g_ex1.oracle.extrapolated.has_value(),
                     "ex41 oracle extrapolation");
            const double dim_oracle = *g_ex1.oracle.extrapolated;
            c.expect_close(dim_tower, dim_comp, 5e-2,
                           "ex41 tower vs companion");
            c.expect_close(dim_tower, dim_oracle, 5e-2,
                           "ex41 tower vs brute force");
            c.expect_close(dim_comp, dim_oracle, 5e-2,
                           "ex41 companion vs brute force");
            double prev = 0.0;
            for (const auto& [k, rk] : g_ex1.lower_bounds) {
                c.expect(rk >= prev - 1e-12,
                         "ex41 companion bounds must not decrease");
                prev = rk;
            }
            c.expect(g_ex1.lower_bounds.back().second <=
                         g_ex1.solve.r + 1e-9,
                     "ex41 companion bound exceeds the root");
        }
        {
            Dim2Config cfg;
            cfg.oracle_N = 10;
            g_ex2 = dimension2d(load("ex42.matrix"), cfg);
            c.expect(g_ex2.applicable, "ex42 applicable");
            const double dim_tower = g_ex2.dim;
            const double dim_comp =
                std::log(g_ex2.lower_bounds.back().second) / std::log(3.0);
            c.expect(g_ex2.oracle.extrapolated.has_value(),
                     "ex42 oracle extrapolation");
            const double dim_oracle = *g_ex2.oracle.extrapolated;
            c.expect_close(dim_tower, dim_comp, 5e-2,
                           "ex42 tower vs companion");
            c.expect_close(dim_tower, dim_oracle, 5e-2,
                           "ex42 tower vs brute force");
            c.expect_close(dim_comp, dim_oracle, 5e-2,
                           "ex42 companion vs brute force");
            double prev = 0.0;
            for (const auto& [k, rk] : g_ex2.lower_bounds) {
                c.expect(rk >= prev - 1e-12,
                         "ex42 companion bounds must not decrease");
                prev = rk;
            }
            c.expect(g_ex2.lower_bounds.back().second <=
                         g_ex2.solve.r + 1e-9,
                     "ex42 companion bound exceeds the root");
        }
    });

    run_criterion(4, "planar reports match the reference or say why not",
                  300.0, [](Checker& c) {
        const int rc41 = run_cli_report("report " + kData + "/ex41.matrix",
                                        "accept41.json", &g_doc41);
        c.expect(rc41 == 0, "ex41 report exit code " + std::to_string(rc41));
        c.expect(g_doc41.contains("reference"), "ex41 reference section");
        if (g_doc41.contains("reference")) {
            const bool matches = g_doc41["reference"]["matches"];
            c.expect(matches ? has_flag(g_doc41, "reference-match")
                             : has_flag(g_doc41, "reference-mismatch"),
                     "ex41 outcome must be flagged either way");
            // A mismatch must carry a suspected cause, never pass silently.
            if (!matches)
                c.expect(has_flag(g_doc41, "suspected cause"),
                         "ex41 mismatch must carry a cause");
        }

        const int rc42 = run_cli_report("report " + kData + "/ex42.matrix",
                                        "accept42.json", &g_doc42);
        c.expect(rc42 == 0, "ex42 report exit code " + std::to_string(rc42));
        c.expect(g_doc42.contains("reference"), "ex42 reference section");
        if (g_doc42.contains("reference")) {
            const bool matches = g_doc42["reference"]["matches"];
            const double computed = g_doc42["result"]["r"];
            const double printed = g_doc42["reference"]["r_printed"];
            c.expect(matches == (std::abs(computed - printed) <= 1e-3),
                     "ex42 match verdict inconsistent with values");
            c.expect(matches ? has_flag(g_doc42, "reference-match")
                             : has_flag(g_doc42, "reference-mismatch"),
                     "ex42 outcome must be flagged either way");
        }
    });

    run_criterion(5, "recursive structures are detected exactly", 1.0,
                  [](Checker& c) {
        auto st3 = detect_recursive_structure(load("ex43.matrix"));
        c.expect(st3.has_value(), "ex43 structure");
        if (st3) {
            c.expect(st3->v.v == std::vector<BigInt>{0, 1},
                     "ex43 direction (0,1)");
            c.expect(st3->removable == std::vector<int>{0},
                     "ex43 removable {0}");
            c.expect(st3->nonremovable == std::vector<int>{1},
                     "ex43 non-removable {1}");
        }
        auto st4 = detect_recursive_structure(load("ex44.matrix"));
        c.expect(st4.has_value(), "ex44 structure");
        if (st4) {
            c.expect(st4->v.v == std::vector<BigInt>{0, 1},
                     "ex44 direction (0,1)");
            c.expect(st4->removable == std::vector<int>{0},
                     "ex44 removable {0}");
            c.expect(st4->nonremovable == std::vector<int>{1, 2},
                     "ex44 non-removable {1,2}");
        }
    });

    run_criterion(6, "return-map coefficients take their closed-form values",
                  60.0, [](Checker& c) {
        AdjacencyFamily fam = load("ex43.matrix");
        auto st = detect_recursive_structure(fam);
        c.expect(st.has_value(), "ex43 structure");
        if (!st) return;
        TreeCoefficients coeffs(fam, *st);
        const double a1 = fam.alphabet.exponent(1);
        const double a2 = fam.alphabet.exponent(2);

        c.expect_close(coeffs.value(0, {}), 1.0, 1e-12, "C_empty(0)");
        c.expect(coeffs.value(1, {}) == 0.0, "C_empty(1) must vanish");
        for (int N = 1; N <= 20; ++N) {
            TreeWord ones(static_cast<size_t>(N), static_cast<char>(1));
            const double want = std::pow(double(N), a2);
            c.expect(rel_gap(coeffs.value(1, ones), want) < 1e-12,
                     "C_{1^" + std::to_string(N) + "}(1) = N^{a2}");
            c.expect(rel_gap(coeffs.value(0, ones), 1.0) < 1e-12,
                     "C_{1^" + std::to_string(N) + "}(0) = 1");
        }

        CoefficientSeries b = b_series(coeffs, 0, 4, 6);
        c.expect(rel_gap(b.c[3], std::pow(2.0 + std::pow(2.0, a2), a1)) <
                     1e-12,
                 "b_3 closed form");
        c.expect(rel_gap(b.c[4], std::pow(3.0 + std::pow(2.0, a2) +
                                              std::pow(3.0, a2),
                                          a1)) < 1e-12,
                 "b_4 closed form");

        // The bundled reference prints an inconsistent intermediate b_2;
        // the report must call that out rather than absorb it.
        const int rc = run_cli_report("report " + kData + "/ex43.matrix",
                                      "accept43.json", &g_doc43);
        c.expect(rc == 0, "ex43 report exit code " + std::to_string(rc));
        c.expect(has_flag(g_doc43, "printed-b2-mismatch"),
                 "ex43 printed b_2 must be flagged");
    });

    run_criterion(7, "spatial series root, tree estimator and brute force "
                     "agree", 600.0, [](Checker& c) {
        {
            Dim3Config cfg;  // K = 40, estimator N <= 10, brute force N <= 9
            g_ex3 = dimension3d(load("ex43.matrix"), cfg);
            c.expect(g_ex3.applicable, "ex43 applicable");
            c.expect(g_ex3.estimate.extrapolated.has_value(),
                     "ex43 estimator extrapolation");
            c.expect(g_ex3.oracle.extrapolated.has_value(),
                     "ex43 oracle extrapolation");
            const double d_series = g_ex3.dim;
            const double d_est = *g_ex3.estimate.extrapolated;
            const double d_brute = *g_ex3.oracle.extrapolated;
            c.expect_close(d_series, d_est, 5e-2,
                           "ex43 series vs estimator");
            c.expect_close(d_series, d_brute, 5e-2,
                           "ex43 series vs brute force");
            c.expect_close(d_est, d_brute, 5e-2,
                           "ex43 estimator vs brute force");
            c.expect(has_flag(g_doc43, "reference-match"),
                     "ex43 printed root must match");
        }
        {
            Dim3Config cfg;
            cfg.K = 18;
            g_ex4 = dimension3d(load("ex44.matrix"), cfg);
            c.expect(g_ex4.applicable, "ex44 applicable");
            c.expect(g_ex4.estimate.extrapolated.has_value(),
                     "ex44 estimator extrapolation");
            c.expect(g_ex4.oracle.extrapolated.has_value(),
                     "ex44 oracle extrapolation");
            const double d_series = g_ex4.dim;
            const double d_est = *g_ex4.estimate.extrapolated;
            const double d_brute = *g_ex4.oracle.extrapolated;
            c.expect_close(d_series, d_est, 5e-2,
                           "ex44 series vs estimator");
            c.expect_close(d_series, d_brute, 5e-2,
                           "ex44 series vs brute force");
            c.expect_close(d_est, d_brute, 5e-2,
                           "ex44 estimator vs brute force");

            const int rc = run_cli_report(
                "report " + kData + "/ex44.matrix --K 18", "accept44.json",
                &g_doc44);
            c.expect(rc == 0, "ex44 report exit code " + std::to_string(rc));
            c.expect(has_flag(g_doc44, "reference-mismatch"),
                     "ex44 printed root must be flagged as unreproduced");
            c.expect(has_flag(g_doc44, "suspected cause"),
                     "ex44 mismatch must carry a cause");
        }
    });

    run_criterion(8, "structural identities hold on bundled and random "
                     "families", 120.0, [](Checker& c) {
        std::mt19937 rng(0xA5F00D);

        // (a) One planar tower step equals the defining sums, on the bundled
        // two-symbol family and on twenty random families with a tail.
        {
            AdjacencyFamily fam = load("ex41.matrix");
            RowDirection v;
            v.v = {1, 1, 1};
            const KeyString s{0, 1};
            CoefficientSeries series = coefficient_series(fam, s, v, 10);
            for (int N = 2; N <= 8; ++N) {
                auto stepped = tower_step(series, phi2_direct(fam, s, v, N));
                auto want = phi2_direct(fam, s, v, N + 1);
                bool ok = stepped.size() == want.size();
                for (size_t i = 0; ok && i < want.size(); ++i)
                    ok = rel_gap(stepped[i], want[i]) < 1e-10;
                c.expect(ok, "ex41 tower step at N=" + std::to_string(N));
            }

            int found = 0, tries = 0;
            while (found < 20 && tries < 4000) {
                ++tries;
                AdjacencyFamily rnd;
                rnd.alphabet = AlphabetSpec{2, {2, 3, 0}};
                rnd.n = 2;
                rnd.by_key.assign(2, IntMatrix(2));
                for (auto& mm : rnd.by_key)
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j)
                            mm.at(i, j) = static_cast<int>(rng() % 3);
                auto tail = find_rank1_string(rnd.by_key, rnd.n, 5);
                if (!tail) continue;
                ++found;
                const int L = static_cast<int>(tail->word.size());
                CoefficientSeries cs = coefficient_series(
                    rnd, tail->word, tail->direction, L + 8);
                bool ok = true;
                for (int N = L; ok && N <= L + 4; ++N) {
                    auto stepped = tower_step(
                        cs, phi2_direct(rnd, tail->word, tail->direction, N));
                    auto want =
                        phi2_direct(rnd, tail->word, tail->direction, N + 1);
                    ok = stepped.size() == want.size();
                    for (size_t i = 0; ok && i < want.size(); ++i)
                        ok = rel_gap(stepped[i], want[i]) < 1e-10;
                }
                c.expect(ok, "random planar tower step, try " +
                                 std::to_string(tries));
            }
            c.expect(found == 20,
                     "found only " + std::to_string(found) +
                         " random planar families with a tail");
        }

        // (b) One spatial operator application equals the defining sums.
        for (const char* name : {"ex43.matrix", "ex44.matrix"}) {
            AdjacencyFamily fam = load(name);
            auto st = detect_recursive_structure(fam);
            c.expect(st.has_value(), std::string(name) + " structure");
            if (!st) continue;
            TreeCoefficients coeffs(fam, *st);
            const int m1 = fam.alphabet.m[0];
            std::vector<KeyString> level = {{}};
            bool ok = true;
            for (int N = 0; N < 5 && ok; ++N) {
                std::vector<KeyString> next_level;
                for (const KeyString& s : level) {
                    TreeVector cur = phi3_direct(fam, *st, s);
                    for (int u = 0; u < m1; ++u) {
                        KeyString su = s;
                        su.push_back(u);
                        next_level.push_back(su);
                        TreeVector want = phi3_direct(fam, *st, su);
                        TreeVector got = apply_operator(coeffs, u, cur, 64);
                        for (const auto& [key, val] : want.entries)
                            ok = ok && rel_gap(got.get(key), val) < 1e-10;
                        for (const auto& [key, val] : got.entries)
                            if (!want.entries.count(key))
                                ok = ok && std::abs(val) < 1e-12;
                    }
                }
                level = std::move(next_level);
            }
            c.expect(ok, std::string(name) + " operator recursion");
        }

        // (c) In-plane choice counting partition on random spatial families.
        {
            int found = 0, tries = 0;
            while (found < 10 && tries < 4000) {
                ++tries;
                AdjacencyFamily rnd;
                rnd.alphabet = AlphabetSpec{3, {2, 2, 3}};
                rnd.n = 2;
                rnd.by_key.assign(4, IntMatrix(2));
                for (auto& mm : rnd.by_key) {
                    if (rng() % 3 == 0) continue;  // leave it zero
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j)
                            mm.at(i, j) = static_cast<int>(rng() % 2);
                }
                auto st = detect_recursive_structure(rnd);
                if (!st) continue;
                ++found;
                const int m2 = rnd.alphabet.m[1];
                bool ok = true;
                for (int N = 1; N <= 6 && ok; ++N) {
                    for (int code = 0; code < (1 << N) && ok; ++code) {
                        std::vector<int> s(static_cast<size_t>(N));
                        for (int i = 0; i < N; ++i) s[i] = (code >> i) & 1;
                        // Split I_2^N by the last position inside P.
                        BigInt total = 1;
                        for (int i = 0; i < N; ++i)
                            total *= m2 - (int)st->P[s[i]].size();
                        for (int k = 0; k < N; ++k) {
                            BigInt pre = 1;
                            for (int i = 0; i < N - k - 1; ++i) pre *= m2;
                            BigInt rk = 1;
                            for (int i = N - k; i < N; ++i)
                                rk *= m2 - (int)st->P[s[i]].size();
                            total +=
                                pre * (int)st->P[s[N - k - 1]].size() * rk;
                        }
                        BigInt want = 1;
                        for (int i = 0; i < N; ++i) want *= m2;
                        ok = total == want;
                    }
                }
                c.expect(ok, "counting partition, try " +
                                 std::to_string(tries));
            }
            c.expect(found == 10,
                     "found only " + std::to_string(found) +
                         " random spatial families with structure");
        }

        // (d) Subadditivity of x -> x^alpha on the exponents in play.
        {
            std::uniform_real_distribution<double> expo(-6.0, 6.0);
            for (double alpha : {std::log(2.0) / std::log(3.0),
                                 std::log(3.0) / std::log(4.0),
                                 std::log(4.0) / std::log(5.0)}) {
                bool ok = true;
                for (int i = 0; i < 10000 && ok; ++i) {
                    const double x = std::pow(10.0, expo(rng));
                    const double y = std::pow(10.0, expo(rng));
                    const double lhs = std::pow(x + y, alpha);
                    const double rhs =
                        std::pow(x, alpha) + std::pow(y, alpha);
                    ok = lhs <= rhs * (1.0 + 1e-12);
                }
                c.expect(ok, "subadditivity at alpha near " +
                                 std::to_string(alpha));
            }
        }
    });

    run_criterion(9, "degenerate families collapse to closed forms", 60.0,
                  [](Checker& c) {
        // The two commuting matrices of the three-symbol family, repackaged.
        AdjacencyFamily pair = parse_matrix_family(
            "dim 2\nm 2 4\nn 2\nmatrix 0\n2 1\n1 2\nmatrix 1\n3 2\n2 3\n");
        auto t = trivial_case_dimension(pair);
        c.expect(t.has_value() && t->kind == "commuting",
                 "commuting pair classification");
        if (t)
            c.expect_close(t->dim,
                           std::log2(std::sqrt(3.0) + std::sqrt(5.0)), 1e-12,
                           "commuting pair closed form");

        AdjacencyFamily diag = parse_matrix_family(
            "dim 2\nm 2 3\nn 2\nmatrix 0\n4 0\n0 2\nmatrix 1\n5 0\n0 1\n");
        auto d = trivial_case_dimension(diag);
        c.expect(d.has_value() && d->kind == "common-eigenvector",
                 "diagonal family classification");
        if (d) {
            auto sweep = brute_dim2_sweep(diag, 10);
            c.expect(sweep.extrapolated.has_value(),
                     "diagonal brute-force extrapolation");
            if (sweep.extrapolated)
                c.expect_close(d->dim, *sweep.extrapolated, 1e-3,
                               "diagonal closed form vs brute force");
        }
    });

    run_criterion(10, "methods cross-check each other; printed values only "
                      "raise flags", 60.0, [](Checker& c) {
        // Computed results are never bent toward the reference: the CLI
        // reports reproduce the library roots bit-for-bit.
        c.expect(g_doc41.contains("result"), "ex41 report result");
        if (g_doc41.contains("result"))
            c.expect_close(g_doc41["result"]["r"].get<double>(), g_ex1.solve.r,
                           1e-12, "ex41 report root vs library");
        c.expect(g_doc42.contains("result"), "ex42 report result");
        if (g_doc42.contains("result"))
            c.expect_close(g_doc42["result"]["r"].get<double>(), g_ex2.solve.r,
                           1e-12, "ex42 report root vs library");
        c.expect(g_doc43.contains("result"), "ex43 report result");
        if (g_doc43.contains("result"))
            c.expect_close(g_doc43["result"]["r"].get<double>(), g_ex3.solve.r,
                           1e-12, "ex43 report root vs library");
        c.expect(g_doc44.contains("result"), "ex44 report result");
        if (g_doc44.contains("result"))
            c.expect_close(g_doc44["result"]["r"].get<double>(), g_ex4.solve.r,
                           1e-12, "ex44 report root vs library");

        // Every bundled example carries an explicit verdict flag.
        for (const json* doc : {&g_doc41, &g_doc42, &g_doc43, &g_doc44}) {
            const bool verdict = has_flag(*doc, "reference-match") ||
                                 has_flag(*doc, "reference-mismatch");
            c.expect(verdict, "every report must state a reference verdict");
        }

        // And disagreement with the printed values never poisons the
        // cross-method agreement established in criteria 3 and 7.
        c.expect(g_ex1.oracle.extrapolated &&
                     std::abs(g_ex1.dim - *g_ex1.oracle.extrapolated) <= 5e-2,
                 "ex41 cross-method agreement");
        c.expect(g_ex4.oracle.extrapolated &&
                     std::abs(g_ex4.dim - *g_ex4.oracle.extrapolated) <= 5e-2,
                 "ex44 cross-method agreement");
    });

    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criteria FAILED"
              << std::endl;
    return 1;
}
