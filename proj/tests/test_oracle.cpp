#include <doctest.h>

#include "soficdim/errors.hpp"
#include "soficdim/family.hpp"
#include "soficdim/oracle.hpp"

#include <cmath>

using namespace soficdim;

namespace {

const std::string kData = SOFICDIM_DATA_DIR;

AdjacencyFamily load(const std::string& name) {
    return load_family_file(kData + "/" + name).family;
}

const double kAlpha23 = std::log(2.0) / std::log(3.0);

}  // namespace

TEST_CASE("aitken extrapolation") {
    // Exactly geometric error: x_N = 1.5 + 0.3 * 0.6^N collapses to the limit.
    std::vector<double> seq;
    for (int n = 0; n < 12; ++n) seq.push_back(1.5 + 0.3 * std::pow(0.6, n));
    auto lim = aitken_extrapolate(seq);
    REQUIRE(lim);
    CHECK(*lim == doctest::Approx(1.5).epsilon(1e-12));

    // A constant tail has no live second difference.
    CHECK(!aitken_extrapolate({2.0, 2.0, 2.0, 2.0}));
    CHECK(!aitken_extrapolate({1.0, 2.0}));  // too short
    CHECK(!aitken_extrapolate({}));
}

TEST_CASE("norm multisets are direction independent") {
    AdjacencyFamily fam = load("ex41.matrix");
    for (int N = 1; N <= 6; ++N) {
        auto right = product_norm_counts(fam, N, false, 1'000'000);
        auto left = product_norm_counts(fam, N, true, 1'000'000);
        CHECK(right == left);
        long long total = 0;
        for (const auto& [norm, count] : right) {
            CHECK(norm > 0);  // zero products are pruned
            total += count;
        }
        CHECK(total <= (1LL << N));
    }

    // Depth 2 by hand: A_0A_0 -> 6, A_0A_1 -> 6, A_1A_0 -> 10, A_1A_1 -> 17.
    auto counts = product_norm_counts(fam, 2, false, 1'000);
    REQUIRE(counts.size() == 3);
    CHECK(counts.at(BigInt(6)) == 2);
    CHECK(counts.at(BigInt(10)) == 1);
    CHECK(counts.at(BigInt(17)) == 1);
}

TEST_CASE("planar brute force matches hand-computed depths") {
    AdjacencyFamily fam = load("ex41.matrix");
    const double a = kAlpha23;
    const double n1 = std::log2(std::pow(4.0, a) + std::pow(7.0, a));
    CHECK(brute_dim2(fam, 1) == doctest::Approx(n1).epsilon(1e-14));

    const double n2 = std::log2(2.0 * std::pow(6.0, a) + std::pow(10.0, a) +
                                std::pow(17.0, a)) /
                      2.0;
    CHECK(brute_dim2(fam, 2) == doctest::Approx(n2).epsilon(1e-14));

    auto sweep = brute_dim2_sweep(fam, 8);
    REQUIRE(sweep.values.size() == 8);
    CHECK(sweep.values[0].first == 1);
    CHECK(sweep.values[0].second == doctest::Approx(n1).epsilon(1e-14));
    CHECK(sweep.values[1].second == doctest::Approx(n2).epsilon(1e-14));
    // Finite depths overestimate and decrease toward the limit here.
    for (size_t i = 1; i < sweep.values.size(); ++i)
        CHECK(sweep.values[i].second < sweep.values[i - 1].second);
    REQUIRE(sweep.extrapolated);
    CHECK(*sweep.extrapolated < sweep.values.back().second);
    CHECK(sweep.spread);
}

TEST_CASE("spatial brute force matches the hand-computed first depth") {
    AdjacencyFamily fam = load("ex43.matrix");
    const double a1 = fam.alphabet.exponent(1);
    const double a2 = fam.alphabet.exponent(2);
    // Depth 1: symbol 0 contributes 1, symbol 1 contributes (1 + 3^{a2})^{a1}.
    const double n1 =
        std::log2(1.0 + std::pow(1.0 + std::pow(3.0, a2), a1));
    CHECK(brute_dim3(fam, 1) == doctest::Approx(n1).epsilon(1e-14));

    auto sweep = brute_dim3_sweep(fam, 5);
    REQUIRE(sweep.values.size() == 5);
    CHECK(sweep.values[0].second == doctest::Approx(n1).epsilon(1e-14));
    for (size_t i = 1; i < sweep.values.size(); ++i)
        CHECK(sweep.values[i].second < sweep.values[i - 1].second);
}

TEST_CASE("brute force is bit-identical across thread counts") {
    AdjacencyFamily fam2 = load("ex41.matrix");
    for (int N : {3, 6}) {
        const double one = brute_dim2(fam2, N, 20'000'000, 1);
        const double four = brute_dim2(fam2, N, 20'000'000, 4);
        CHECK(one == four);  // exact double equality, by design
    }
    AdjacencyFamily fam3 = load("ex43.matrix");
    for (int N : {3, 5}) {
        const double one = brute_dim3(fam3, N, 20'000'000, 1);
        const double four = brute_dim3(fam3, N, 20'000'000, 4);
        CHECK(one == four);
    }
}

TEST_CASE("budgets abort enumeration instead of silently truncating") {
    AdjacencyFamily fam = load("ex41.matrix");
    CHECK_THROWS_AS(brute_dim2(fam, 12, 5), BudgetError);
    AdjacencyFamily fam3 = load("ex43.matrix");
    CHECK_THROWS_AS(brute_dim3(fam3, 8, 5), BudgetError);
}

TEST_CASE("commuting families collapse to spectral radii") {
    // 1x1 matrices always commute; key sum is a positive scalar.
    AdjacencyFamily tiny = parse_matrix_family(
        "dim 2\nm 2 3\nn 1\nmatrix 0\n2\nmatrix 1\n3\n");
    auto t = trivial_case_dimension(tiny);
    REQUIRE(t);
    CHECK(t->kind == "commuting");
    const double expect =
        std::log2(std::pow(2.0, kAlpha23) + std::pow(3.0, kAlpha23));
    CHECK(t->dim == doctest::Approx(expect).epsilon(1e-12));

    // The two commuting symmetric matrices of the three-symbol family,
    // repackaged alone: radii 3 and 5, exponent 1/2.
    AdjacencyFamily pair = parse_matrix_family(
        "dim 2\nm 2 4\nn 2\nmatrix 0\n2 1\n1 2\nmatrix 1\n3 2\n2 3\n");
    auto p = trivial_case_dimension(pair);
    REQUIRE(p);
    CHECK(p->kind == "commuting");
    CHECK(p->dim ==
          doctest::Approx(std::log2(std::sqrt(3.0) + std::sqrt(5.0)))
              .epsilon(1e-12));
}

TEST_CASE("families with a shared dominant eigenvector") {
    // Diagonal matrices commute exactly, but the key sum is reducible, so
    // the closed form goes through the common Perron vector instead.
    AdjacencyFamily diag = parse_matrix_family(
        "dim 2\nm 2 3\nn 2\nmatrix 0\n4 0\n0 2\nmatrix 1\n5 0\n0 1\n");
    auto t = trivial_case_dimension(diag);
    REQUIRE(t);
    CHECK(t->kind == "common-eigenvector");
    const double expect =
        std::log2(std::pow(4.0, kAlpha23) + std::pow(5.0, kAlpha23));
    CHECK(t->dim == doctest::Approx(expect).epsilon(1e-12));
    CHECK(t->dim == doctest::Approx(2.366988065278084).epsilon(1e-12));

    // Against the defining limit: closed form within 1e-3 of depth 10.
    auto sweep = brute_dim2_sweep(diag, 10);
    REQUIRE(sweep.extrapolated);
    CHECK(std::abs(t->dim - *sweep.extrapolated) < 1e-3);
}

TEST_CASE("generic families are not classified as trivial") {
    CHECK(!trivial_case_dimension(load("ex41.matrix")));
    CHECK(!trivial_case_dimension(load("ex42.matrix")));
    CHECK(!trivial_case_dimension(load("ex43.matrix")));
    CHECK(!trivial_case_dimension(load("ex44.matrix")));
}
