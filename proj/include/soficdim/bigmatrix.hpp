#pragma once

// Exact integer matrix kernel. All adjacency products and the scalars read
// off rank-1 images are computed in arbitrary precision; floating point only
// enters when a value is handed to the analytic layer through log_value().

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace soficdim {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Key strings index restricted adjacency matrices: each element is a flat
// key in [0, key_count). Order is most-significant-first, i.e. s[0] is the
// first symbol of the word.
using KeyString = std::vector<int>;

class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

    static IntMatrix identity(int n);

    int size() const noexcept { return n_; }

    BigInt& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const BigInt& at(int i, int j) const {
        return a_[static_cast<size_t>(i) * n_ + j];
    }

    bool is_zero() const;
    bool operator==(const IntMatrix& o) const = default;

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix& operator+=(const IntMatrix& rhs);

    // Sum of all entries; the matrix norm used throughout (entries are
    // non-negative in every family we build).
    BigInt entry_sum() const;

    IntMatrix pow(unsigned k) const;

    std::string to_string() const;

private:
    int n_ = 0;
    std::vector<BigInt> a_;
};

// Row direction spanning a rank-1 row image: integer entries, gcd 1,
// first nonzero entry positive.
struct RowDirection {
    std::vector<BigInt> v;

    bool operator==(const RowDirection& o) const = default;
    std::string to_string() const;
};

// Scales an integer vector to the canonical direction representative.
// Returns nullopt for the zero vector.
std::optional<RowDirection> normalize_direction(std::vector<BigInt> w);

// If every row of A is a (possibly zero) multiple of one common nonzero row,
// returns that row's canonical direction. Zero and higher-rank matrices give
// nullopt. (Rank-1 with non-proportional rows cannot occur for row images of
// products, which is the only use; we still check all row pairs.)
std::optional<RowDirection> image_rank1(const IntMatrix& A);

// w := v * A (row vector times matrix).
std::vector<BigInt> row_times_matrix(const std::vector<BigInt>& v,
                                     const IntMatrix& A);

// Product A_{s[0]} * A_{s[1]} * ... * A_{s[k-1]} over a family indexed by
// flat key. Empty string gives the identity.
IntMatrix product_over_string(const std::vector<IntMatrix>& mats,
                              const KeyString& s, int n);

// Exact scalar J with  v * P = J * v  where P is the product over `word`.
// Throws ProportionalityError if v*P is not proportional to v. For a
// canonical direction (gcd 1) the result is always an integer, but the
// rational is returned so callers can assert that themselves.
BigRat left_scalar(const RowDirection& v, const KeyString& word,
                   const std::vector<IntMatrix>& mats);

struct Rank1Search {
    KeyString word;
    RowDirection direction;
};

// Shortest string whose product has rank-1 row image, ties broken by lex
// order on flat keys. Zero products are pruned. Returns nullopt when no such
// string of length <= max_len exists (or the node budget runs out).
std::optional<Rank1Search> find_rank1_string(const std::vector<IntMatrix>& mats,
                                             int n, int max_len,
                                             long long node_budget = 2'000'000);

// Primitivity of the non-negative matrix A: some power of the boolean
// skeleton is entrywise positive. Checks exponents up to (n-1)^2 + 1,
// which is sharp (Wielandt).
bool is_primitive(const IntMatrix& A);

// Natural log of a positive big integer, safe far beyond double range.
double log_value(const BigInt& x);

// Natural log of a positive rational.
double log_value(const BigRat& x);

}  // namespace soficdim
