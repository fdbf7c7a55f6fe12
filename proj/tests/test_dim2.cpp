#include <doctest.h>

#include "soficdim/dim2.hpp"
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

}  // namespace

TEST_CASE("avoiding-string coefficients of the two-symbol family") {
    AdjacencyFamily fam = load("ex41.matrix");
    RowDirection v;
    v.v = {1, 1, 1};
    long long enumerated = 0;
    CoefficientSeries s =
        coefficient_series(fam, KeyString{0, 1}, v, 5, 1, -1, &enumerated);
    CHECK(s.L == 2);
    CHECK(s.alpha ==
          doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-15));
    REQUIRE(s.K() == 5);
    const double expect[6] = {1.5485626526, 5.4951715944, 13.7956067938,
                              30.6157873531, 63.5348106343, 126.5088707226};
    for (int k = 0; k <= 5; ++k)
        CHECK(s.c[k] == doctest::Approx(expect[k]).epsilon(1e-9));
    // Words avoiding 01 over two symbols: sum_{k<=5} (k+1) of them.
    CHECK(enumerated == 1 + 2 + 3 + 4 + 5 + 6);

    // Thread partitioning must not move the sums at all.
    CoefficientSeries s4 = coefficient_series(fam, KeyString{0, 1}, v, 5, 4);
    for (int k = 0; k <= 5; ++k) CHECK(s.c[k] == s4.c[k]);
}

TEST_CASE("level vectors satisfy the one-step recursion") {
    AdjacencyFamily fam = load("ex41.matrix");
    RowDirection v;
    v.v = {1, 1, 1};
    const KeyString s{0, 1};
    CoefficientSeries series = coefficient_series(fam, s, v, 10);

    const double a = series.alpha;
    const double ve = std::pow(3.0, a);  // (v . e)^alpha

    auto phi2 = phi2_direct(fam, s, v, 2);
    REQUIRE(phi2.size() == 3);
    CHECK(phi2[0] == doctest::Approx(series.c[0] * ve).epsilon(1e-12));
    CHECK(phi2[1] == 0.0);
    CHECK(phi2[2] == doctest::Approx(ve).epsilon(1e-15));

    for (int N = 2; N <= 7; ++N) {
        auto cur = phi2_direct(fam, s, v, N);
        auto next = phi2_direct(fam, s, v, N + 1);
        auto stepped = tower_step(series, cur);
        REQUIRE(stepped.size() == next.size());
        for (size_t i = 0; i < next.size(); ++i) {
            if (next[i] == 0.0)
                CHECK(stepped[i] == 0.0);
            else
                CHECK(stepped[i] ==
                      doctest::Approx(next[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("full pipeline on the two-symbol family") {
    AdjacencyFamily fam = load("ex41.matrix");
    Dim2Config cfg;  // oracle disabled
    Dim2Result res = dimension2d(fam, cfg);

    CHECK(res.applicable);
    CHECK(!res.primitive);  // vertex 1 never leaves itself
    REQUIRE(res.tail);
    CHECK(res.tail->word == KeyString{0, 1});
    CHECK(res.tail->direction.v == std::vector<BigInt>{1, 1, 1});

    // Tail-driven truncation growth settles at K = 59 for this family.
    CHECK(res.series.K() == 59);
    CHECK(!res.budget_clamped);
    CHECK(res.solve.r == doctest::Approx(2.9426795426800108).epsilon(1e-12));
    CHECK(res.solve.residual < 1e-12);
    CHECK(res.dim ==
          doctest::Approx(std::log2(2.9426795426800108)).epsilon(1e-12));

    REQUIRE(res.lower_bounds.size() == 40);
    double prev = 0.0;
    for (const auto& [k, rk] : res.lower_bounds) {
        CHECK(rk >= prev - 1e-12);
        CHECK(rk <= res.solve.r + 1e-9);
        prev = rk;
    }
    CHECK(res.lower_bounds[4].second ==
          doctest::Approx(2.672286414204).epsilon(1e-10));
    CHECK(res.lower_bounds[9].second ==
          doctest::Approx(2.922938252400).epsilon(1e-10));
    CHECK(res.lower_bounds[19].second ==
          doctest::Approx(2.942555382076).epsilon(1e-10));
    CHECK(res.lower_bounds[39].second ==
          doctest::Approx(2.942679538859).epsilon(1e-10));
}

TEST_CASE("full pipeline on the three-symbol family") {
    AdjacencyFamily fam = load("ex42.matrix");
    Dim2Config cfg;
    Dim2Result res = dimension2d(fam, cfg);

    CHECK(res.applicable);
    CHECK(res.primitive);
    REQUIRE(res.tail);
    CHECK(res.tail->word == KeyString{0});
    CHECK(res.tail->direction.v == std::vector<BigInt>{1, 0});

    // 2^k avoiding words per level: the default budget clamps at K = 23.
    CHECK(res.budget_clamped);
    CHECK(res.series.K() == 23);
    CHECK(res.series.c[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(res.series.c[1] == doctest::Approx(7.67438362).epsilon(1e-8));
    CHECK(res.series.c[2] == doctest::Approx(48.29096347).epsilon(1e-8));
    CHECK(res.series.c[3] == doctest::Approx(291.95947390).epsilon(1e-8));
    CHECK(res.series.c[4] == doctest::Approx(1748.24394851).epsilon(1e-8));

    CHECK(res.solve.r == doctest::Approx(7.250635263863949).epsilon(1e-12));
    CHECK(res.dim == doctest::Approx(std::log(7.250635263863949) /
                                     std::log(3.0))
                         .epsilon(1e-12));
    // The deep companion bound may overshoot the truncated-series root by
    // rounding only.
    CHECK(res.lower_bounds[39].second <= res.solve.r + 1e-9);
    CHECK(res.lower_bounds[39].second ==
          doctest::Approx(res.solve.r).epsilon(1e-10));
}

TEST_CASE("strict primitivity turns the warning into a failure") {
    AdjacencyFamily fam = load("ex41.matrix");
    Dim2Config cfg;
    cfg.primitivity_strict = true;
    CHECK_THROWS_AS(dimension2d(fam, cfg), MethodError);
}

TEST_CASE("a budget below the first series level is an error, at it a clamp") {
    AdjacencyFamily fam = load("ex41.matrix");
    Dim2Config tiny;
    tiny.budget = 0;
    CHECK_THROWS_AS(dimension2d(fam, tiny), BudgetError);

    // One unit of work covers exactly the empty avoiding string, so the
    // series is truncated to its k = 0 coefficient: r^L = C_0 with the
    // length-2 tail string found for this family.
    Dim2Config one;
    one.budget = 1;
    Dim2Result res = dimension2d(fam, one);
    CHECK(res.applicable);
    CHECK(res.budget_clamped);
    REQUIRE(res.series.c.size() == 1);
    REQUIRE(res.series.L == 2);
    CHECK(res.solve.r ==
          doctest::Approx(std::sqrt(res.series.c[0])).epsilon(1e-14));
}

TEST_CASE("families without a rank-1 product fall back to the oracle") {
    AdjacencyFamily diag = parse_matrix_family(
        "dim 2\nm 2 3\nn 2\nmatrix 0\n4 0\n0 2\nmatrix 1\n5 0\n0 1\n");
    Dim2Config cfg;
    cfg.oracle_N = 6;
    Dim2Result res = dimension2d(diag, cfg);
    CHECK(!res.applicable);
    CHECK(!res.tail);
    REQUIRE(res.oracle.values.size() == 6);
    CHECK(res.oracle.extrapolated);
}

TEST_CASE("a single unit matrix gives dimension zero") {
    // Only key 0 is nonzero and its matrix is [1]: every product has norm 1,
    // the series is 1, 0, 0, ... and the root is exactly 1.
    AdjacencyFamily unit =
        parse_matrix_family("dim 2\nm 2 2\nn 1\nmatrix 0\n1\n");
    Dim2Config cfg;
    cfg.K = 5;
    Dim2Result res = dimension2d(unit, cfg);
    CHECK(res.applicable);
    CHECK(res.solve.r == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(res.dim == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("oracle sweep is attached and compared when requested") {
    AdjacencyFamily fam = load("ex41.matrix");
    Dim2Config cfg;
    cfg.oracle_N = 8;
    Dim2Result res = dimension2d(fam, cfg);
    REQUIRE(res.oracle.values.size() == 8);
    REQUIRE(res.oracle_delta);
    // Depth 8 still sits well above the limit; the delta is the honest gap.
    CHECK(*res.oracle_delta ==
          doctest::Approx(res.dim - *res.oracle.extrapolated).epsilon(1e-12));
}
