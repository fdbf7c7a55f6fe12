#include <doctest.h>

#include "soficdim/bigmatrix.hpp"
#include "soficdim/errors.hpp"
#include "soficdim/spectral.hpp"

#include <cmath>

using namespace soficdim;

namespace {

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

const IntMatrix ex1_a0 = from_rows({{2, 0, 0}, {0, 1, 0}, {0, 1, 0}});
const IntMatrix ex1_a1 = from_rows({{1, 1, 1}, {0, 0, 0}, {2, 1, 1}});

}  // namespace

TEST_CASE("integer matrix arithmetic") {
    IntMatrix id = IntMatrix::identity(3);
    CHECK(id * ex1_a0 == ex1_a0);
    CHECK(ex1_a0 * id == ex1_a0);

    IntMatrix p = ex1_a0 * ex1_a1;
    CHECK(p == from_rows({{2, 2, 2}, {0, 0, 0}, {0, 0, 0}}));
    CHECK(p.entry_sum() == 6);

    IntMatrix q = ex1_a1 * ex1_a0;
    CHECK(q == from_rows({{2, 2, 0}, {0, 0, 0}, {4, 2, 0}}));
    CHECK(q.entry_sum() == 10);

    CHECK(ex1_a1.pow(2) == ex1_a1 * ex1_a1);
    CHECK(ex1_a1.pow(0) == IntMatrix::identity(3));
    CHECK(ex1_a1.pow(5).entry_sum() == (ex1_a1 * ex1_a1 * ex1_a1 * ex1_a1 * ex1_a1).entry_sum());

    IntMatrix s = ex1_a0;
    s += ex1_a1;
    CHECK(s == from_rows({{3, 1, 1}, {0, 1, 0}, {2, 2, 1}}));
    CHECK(!s.is_zero());
    CHECK(IntMatrix(2).is_zero());
}

TEST_CASE("rank-1 image detection") {
    CHECK(!image_rank1(ex1_a0));  // two independent rows
    CHECK(!image_rank1(IntMatrix(3)));  // zero matrix is not rank 1

    auto dir = image_rank1(ex1_a0 * ex1_a1);
    REQUIRE(dir);
    CHECK(dir->v == std::vector<BigInt>{1, 1, 1});

    // Normalization: first nonzero coordinate positive, gcd 1.
    auto d2 = image_rank1(from_rows({{0, 0}, {4, 6}}));
    REQUIRE(d2);
    CHECK(d2->v == std::vector<BigInt>{2, 3});
}

TEST_CASE("row transport and scalars along a direction") {
    RowDirection v;
    v.v = {1, 1, 1};
    auto row = row_times_matrix(v.v, ex1_a0 * ex1_a1);
    CHECK(row == std::vector<BigInt>{2, 2, 2});  // = 2 * v

    std::vector<IntMatrix> mats = {ex1_a0, ex1_a1};
    CHECK(product_over_string(mats, KeyString{0, 1}, 3) == ex1_a0 * ex1_a1);
    CHECK(product_over_string(mats, KeyString{}, 3) == IntMatrix::identity(3));
}

TEST_CASE("left scalars along a preserved direction") {
    std::vector<IntMatrix> mats = {ex1_a0, ex1_a1};
    RowDirection v;
    v.v = {1, 1, 1};
    // v * P(u) * P(01) = J * v for words u = empty, 0, 1.
    CHECK(left_scalar(v, KeyString{0, 1}, mats) == BigRat(2));
    CHECK(left_scalar(v, KeyString{0, 0, 1}, mats) == BigRat(4));
    CHECK(left_scalar(v, KeyString{1, 0, 1}, mats) == BigRat(6));
    // v * A_0 = (2,2,0) leaves the span.
    CHECK_THROWS_AS(left_scalar(v, KeyString{0}, mats), ProportionalityError);
}

TEST_CASE("rank-1 string search finds the shortest witness") {
    std::vector<IntMatrix> mats = {ex1_a0, ex1_a1};
    auto hit = find_rank1_string(mats, 3, 8);
    REQUIRE(hit);
    CHECK(hit->word == KeyString{0, 1});
    CHECK(hit->direction.v == std::vector<BigInt>{1, 1, 1});

    std::vector<IntMatrix> second = {from_rows({{1, 0}, {2, 0}}),
                                     from_rows({{2, 1}, {1, 2}}),
                                     from_rows({{3, 2}, {2, 3}})};
    auto hit2 = find_rank1_string(second, 2, 8);
    REQUIRE(hit2);
    CHECK(hit2->word == KeyString{0});
    CHECK(hit2->direction.v == std::vector<BigInt>{1, 0});

    // Diagonal families have no rank-1 product at all.
    std::vector<IntMatrix> diag = {from_rows({{4, 0}, {0, 2}}),
                                   from_rows({{5, 0}, {0, 1}})};
    CHECK(!find_rank1_string(diag, 2, 6));
}

TEST_CASE("primitivity of non-negative matrices") {
    CHECK(is_primitive(from_rows({{1, 1}, {1, 0}})));
    CHECK(!is_primitive(from_rows({{0, 1}, {1, 0}})));  // periodic
    CHECK(!is_primitive(from_rows({{1, 0}, {0, 1}})));  // reducible
    // Vertex 1 of the first example only ever returns to itself.
    IntMatrix s = ex1_a0;
    s += ex1_a1;
    CHECK(!is_primitive(s));
}

TEST_CASE("spectral radius by power iteration") {
    RealMatrix fib(2);
    fib.at(0, 0) = 1; fib.at(0, 1) = 1; fib.at(1, 0) = 1;
    auto res = spectral_radius(fib);
    CHECK(res.radius == doctest::Approx(1.6180339887498949).epsilon(1e-12));

    // Companion of r = 2 + 3/r: roots 3 and -1.
    RealMatrix comp(2);
    comp.at(0, 0) = 2; comp.at(0, 1) = 3; comp.at(1, 0) = 1;
    CHECK(spectral_radius(comp).radius == doctest::Approx(3.0).epsilon(1e-12));

    RealMatrix zero(3);
    CHECK(spectral_radius(zero).radius == doctest::Approx(0.0));

    // Nilpotent: power convergence fails, the bracket fallback still lands.
    RealMatrix nil(2);
    nil.at(0, 1) = 1;
    CHECK(spectral_radius(nil).radius == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("logs of big integers and rationals") {
    CHECK(log_value(BigInt(8)) == doctest::Approx(std::log(8.0)).epsilon(1e-14));
    BigInt big = 1;
    for (int i = 0; i < 50; ++i) big *= 10;
    CHECK(log_value(big) == doctest::Approx(50 * std::log(10.0)).epsilon(1e-12));
    CHECK(log_value(BigRat(3, 2)) ==
          doctest::Approx(std::log(1.5)).epsilon(1e-14));
}
