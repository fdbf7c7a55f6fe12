#include "soficdim/bigmatrix.hpp"

#include "soficdim/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cmath>
#include <sstream>

namespace soficdim {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix I(n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    IntMatrix out(n_);
    for (int i = 0; i < n_; ++i) {
        for (int k = 0; k < n_; ++k) {
            const BigInt& aik = at(i, k);
            if (aik == 0) continue;  // families are sparse; skip dead terms
            for (int j = 0; j < n_; ++j) {
                const BigInt& bkj = rhs.at(k, j);
                if (bkj != 0) out.at(i, j) += aik * bkj;
            }
        }
    }
    return out;
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& rhs) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

BigInt IntMatrix::entry_sum() const {
    BigInt s = 0;
    for (const auto& x : a_) s += x;
    return s;
}

IntMatrix IntMatrix::pow(unsigned k) const {
    IntMatrix result = identity(n_);
    IntMatrix base = *this;
    while (k > 0) {
        if (k & 1u) result = result * base;
        base = base * base;
        k >>= 1u;
    }
    return result;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < n_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < n_; ++j) os << (j ? " " : "[") << at(i, j);
        os << "]" << (i + 1 == n_ ? "]" : "\n");
    }
    return os.str();
}

std::string RowDirection::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

std::optional<RowDirection> normalize_direction(std::vector<BigInt> w) {
    BigInt g = 0;
    for (const auto& x : w) g = boost::multiprecision::gcd(g, x);
    if (g == 0) return std::nullopt;
    for (auto& x : w) x /= g;
    for (const auto& x : w) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : w) y = -y;
        break;
    }
    return RowDirection{std::move(w)};
}

std::optional<RowDirection> image_rank1(const IntMatrix& A) {
    const int n = A.size();
    int base = -1;
    for (int i = 0; i < n && base < 0; ++i)
        for (int j = 0; j < n; ++j)
            if (A.at(i, j) != 0) {
                base = i;
                break;
            }
    if (base < 0) return std::nullopt;  // zero matrix
    // Every other row must be proportional to row `base`:
    // a_ij * a_bk == a_ik * a_bj for all j < k.
    for (int i = 0; i < n; ++i) {
        if (i == base) continue;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (A.at(i, j) * A.at(base, k) != A.at(i, k) * A.at(base, j))
                    return std::nullopt;
        // Proportionality above tolerates a row that lives on a different
        // coordinate axis when row `base` has zeros there; rule that out.
        for (int j = 0; j < n; ++j)
            if (A.at(base, j) == 0 && A.at(i, j) != 0) return std::nullopt;
    }
    std::vector<BigInt> row(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) row[static_cast<size_t>(j)] = A.at(base, j);
    return normalize_direction(std::move(row));
}

std::vector<BigInt> row_times_matrix(const std::vector<BigInt>& v,
                                     const IntMatrix& A) {
    const int n = A.size();
    std::vector<BigInt> w(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const BigInt& vi = v[static_cast<size_t>(i)];
        if (vi == 0) continue;
        for (int j = 0; j < n; ++j) {
            const BigInt& aij = A.at(i, j);
            if (aij != 0) w[static_cast<size_t>(j)] += vi * aij;
        }
    }
    return w;
}

IntMatrix product_over_string(const std::vector<IntMatrix>& mats,
                              const KeyString& s, int n) {
    IntMatrix P = IntMatrix::identity(n);
    for (int key : s) P = P * mats[static_cast<size_t>(key)];
    return P;
}

BigRat left_scalar(const RowDirection& v, const KeyString& word,
                   const std::vector<IntMatrix>& mats) {
    std::vector<BigInt> w = v.v;
    for (int key : word) w = row_times_matrix(w, mats[static_cast<size_t>(key)]);
    int pivot = -1;
    for (size_t i = 0; i < v.v.size(); ++i)
        if (v.v[i] != 0) {
            pivot = static_cast<int>(i);
            break;
        }
    if (pivot < 0) throw ProportionalityError("direction vector is zero");
    BigRat J(w[static_cast<size_t>(pivot)], v.v[static_cast<size_t>(pivot)]);
    const BigInt num = boost::multiprecision::numerator(J);
    const BigInt den = boost::multiprecision::denominator(J);
    for (size_t i = 0; i < v.v.size(); ++i)
        if (w[i] * den != num * v.v[i])
            throw ProportionalityError(
                "row image left span of " + v.to_string());
    return J;
}

namespace {

bool rank1_dfs(const std::vector<IntMatrix>& mats, int n, int len,
               KeyString& word, const IntMatrix& prefix, long long& nodes,
               std::optional<Rank1Search>& hit) {
    if (static_cast<int>(word.size()) == len) {
        if (auto dir = image_rank1(prefix)) {
            hit = Rank1Search{word, std::move(*dir)};
            return true;
        }
        return false;
    }
    for (int key = 0; key < static_cast<int>(mats.size()); ++key) {
        if (--nodes < 0)
            throw BudgetError("rank-1 search exceeded its node budget");
        IntMatrix next = prefix * mats[static_cast<size_t>(key)];
        if (next.is_zero()) continue;
        word.push_back(key);
        if (rank1_dfs(mats, n, len, word, next, nodes, hit)) return true;
        word.pop_back();
    }
    return false;
}

}  // namespace

std::optional<Rank1Search> find_rank1_string(const std::vector<IntMatrix>& mats,
                                             int n, int max_len,
                                             long long node_budget) {
    long long nodes = node_budget;
    for (int len = 1; len <= max_len; ++len) {
        KeyString word;
        std::optional<Rank1Search> hit;
        if (rank1_dfs(mats, n, len, word, IntMatrix::identity(n), nodes, hit))
            return hit;
    }
    return std::nullopt;
}

bool is_primitive(const IntMatrix& A) {
    const int n = A.size();
    if (n == 0) return false;
    const size_t nn = static_cast<size_t>(n) * n;
    std::vector<char> skel(nn), cur(nn);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            skel[static_cast<size_t>(i) * n + j] = A.at(i, j) != 0 ? 1 : 0;
    cur = skel;
    const int wielandt = (n - 1) * (n - 1) + 1;
    for (int p = 1; p <= wielandt; ++p) {
        bool all = true;
        for (char c : cur)
            if (!c) {
                all = false;
                break;
            }
        if (all) return true;
        std::vector<char> next(nn, 0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (cur[static_cast<size_t>(i) * n + k])
                    for (int j = 0; j < n; ++j)
                        if (skel[static_cast<size_t>(k) * n + j])
                            next[static_cast<size_t>(i) * n + j] = 1;
        cur = std::move(next);
    }
    return false;
}

double log_value(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log_value: argument must be positive");
    const unsigned bits = boost::multiprecision::msb(x);
    if (bits < 900) return std::log(x.convert_to<double>());
    // Take the top 64 bits and account for the shift.
    const unsigned shift = bits - 63;
    const BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

double log_value(const BigRat& x) {
    return log_value(boost::multiprecision::numerator(x)) -
           log_value(boost::multiprecision::denominator(x));
}

}  // namespace soficdim
