/**
 * Exact integer linear algebra on the lattices N and M.
 *
 * Everything here works over arbitrary-precision integers, so no operation
 * can overflow. Vectors are plain coordinate tuples; the pairing between M
 * and N is the ordinary dot product in these coordinates.
 */

#ifndef TORIC_LATTICE_HPP
#define TORIC_LATTICE_HPP

#include <toric/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace toric {

using Integer = boost::multiprecision::cpp_int;

/// Checked narrowing for values that leave the exact world (reports, indices).
inline std::int64_t to_int64(const Integer& value)
{
    if (value > std::numeric_limits<std::int64_t>::max() ||
        value < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("integer " + value.str() + " does not fit in 64 bits");
    }
    return value.convert_to<std::int64_t>();
}

inline int sign(const Integer& value)
{
    return value.sign();
}

/// gcd(0, a) = |a|; the result is never negative.
inline Integer gcd(Integer a, Integer b)
{
    a = boost::multiprecision::abs(a);
    b = boost::multiprecision::abs(b);
    while (b != 0) {
        Integer r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

class LatticeVector {
public:
    LatticeVector() = default;

    explicit LatticeVector(std::size_t dim) : coords_(dim, Integer(0)) {}

    explicit LatticeVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}

    LatticeVector(std::initializer_list<long long> coords)
    {
        coords_.reserve(coords.size());
        for (long long c : coords) {
            coords_.emplace_back(c);
        }
    }

    static LatticeVector unit(std::size_t dim, std::size_t i)
    {
        LatticeVector e(dim);
        e[i] = 1;
        return e;
    }

    std::size_t dim() const { return coords_.size(); }

    Integer& operator[](std::size_t i) { return coords_[i]; }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }

    const std::vector<Integer>& coords() const { return coords_; }

    auto begin() const { return coords_.begin(); }
    auto end() const { return coords_.end(); }

    bool is_zero() const
    {
        return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
    }

    LatticeVector& operator+=(const LatticeVector& rhs)
    {
        require_same_dim(rhs);
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            coords_[i] += rhs.coords_[i];
        }
        return *this;
    }

    LatticeVector& operator-=(const LatticeVector& rhs)
    {
        require_same_dim(rhs);
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            coords_[i] -= rhs.coords_[i];
        }
        return *this;
    }

    LatticeVector& operator*=(const Integer& k)
    {
        for (auto& c : coords_) {
            c *= k;
        }
        return *this;
    }

    friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
    friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
    friend LatticeVector operator*(const Integer& k, LatticeVector v) { return v *= k; }
    friend LatticeVector operator-(LatticeVector v) { return v *= Integer(-1); }

    friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.coords_ == b.coords_; }

    /// Lexicographic; used only for deterministic tie-breaking.
    friend bool operator<(const LatticeVector& a, const LatticeVector& b)
    {
        return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                            b.coords_.end());
    }

    std::string str() const
    {
        std::ostringstream out;
        out << *this;
        return out.str();
    }

    friend std::ostream& operator<<(std::ostream& out, const LatticeVector& v)
    {
        out << '(';
        for (std::size_t i = 0; i < v.coords_.size(); ++i) {
            out << (i ? ", " : "") << v.coords_[i];
        }
        return out << ')';
    }

private:
    void require_same_dim(const LatticeVector& rhs) const
    {
        if (rhs.dim() != dim()) {
            throw std::invalid_argument("lattice vectors of different dimension");
        }
    }

    std::vector<Integer> coords_;
};

/// The natural pairing M x N -> Z.
inline Integer pairing(const LatticeVector& u, const LatticeVector& v)
{
    if (u.dim() != v.dim()) {
        throw std::invalid_argument("pairing of vectors of different dimension");
    }
    Integer sum = 0;
    for (std::size_t i = 0; i < u.dim(); ++i) {
        sum += u[i] * v[i];
    }
    return sum;
}

/// Square integer matrix. Columns are read as basis vectors, so M * x is the
/// ambient vector with coordinates x in that basis.
class IntegerMatrix {
public:
    explicit IntegerMatrix(std::size_t n) : n_(n), entries_(n * n, Integer(0)) {}

    static IntegerMatrix identity(std::size_t n)
    {
        IntegerMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    static IntegerMatrix from_columns(std::span<const LatticeVector> columns)
    {
        IntegerMatrix m(columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].dim() != columns.size()) {
                throw std::invalid_argument("matrix columns must have length equal to their count");
            }
            for (std::size_t r = 0; r < columns.size(); ++r) {
                m(r, c) = columns[c][r];
            }
        }
        return m;
    }

    static IntegerMatrix from_rows(std::span<const LatticeVector> rows)
    {
        return from_columns(rows).transposed();
    }

    std::size_t size() const { return n_; }

    Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }

    LatticeVector column(std::size_t c) const
    {
        LatticeVector v(n_);
        for (std::size_t r = 0; r < n_; ++r) {
            v[r] = (*this)(r, c);
        }
        return v;
    }

    LatticeVector row(std::size_t r) const
    {
        LatticeVector v(n_);
        for (std::size_t c = 0; c < n_; ++c) {
            v[c] = (*this)(r, c);
        }
        return v;
    }

    IntegerMatrix transposed() const
    {
        IntegerMatrix t(n_);
        for (std::size_t r = 0; r < n_; ++r) {
            for (std::size_t c = 0; c < n_; ++c) {
                t(c, r) = (*this)(r, c);
            }
        }
        return t;
    }

    friend LatticeVector operator*(const IntegerMatrix& m, const LatticeVector& x)
    {
        if (x.dim() != m.n_) {
            throw std::invalid_argument("matrix-vector dimension mismatch");
        }
        LatticeVector y(m.n_);
        for (std::size_t r = 0; r < m.n_; ++r) {
            for (std::size_t c = 0; c < m.n_; ++c) {
                y[r] += m(r, c) * x[c];
            }
        }
        return y;
    }

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b)
    {
        if (a.n_ != b.n_) {
            throw std::invalid_argument("matrix-matrix dimension mismatch");
        }
        IntegerMatrix p(a.n_);
        for (std::size_t r = 0; r < a.n_; ++r) {
            for (std::size_t k = 0; k < a.n_; ++k) {
                for (std::size_t c = 0; c < a.n_; ++c) {
                    p(r, c) += a(r, k) * b(k, c);
                }
            }
        }
        return p;
    }

    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b)
    {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

private:
    std::size_t n_;
    std::vector<Integer> entries_;
};

struct Primitive {
    LatticeVector direction;
    Integer multiplicity;
};

/// Splits v = k * p with p primitive and k >= 1. The sign of v is kept.
inline Primitive primitive(const LatticeVector& v)
{
    Integer g = 0;
    for (const auto& c : v) {
        g = gcd(g, c);
    }
    if (g == 0) {
        throw ValidationError("zero vector has no primitive direction");
    }
    std::vector<Integer> coords;
    coords.reserve(v.dim());
    for (const auto& c : v) {
        coords.push_back(c / g);
    }
    return {LatticeVector(std::move(coords)), g};
}

namespace detail {

/// Fraction-free Gaussian elimination. Every intermediate division is exact.
template <class Int>
Int bareiss_determinant(std::vector<std::vector<Int>> a)
{
    const std::size_t n = a.size();
    if (n == 0) {
        return Int(1);
    }
    Int previous_pivot = 1;
    int parity = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k] == 0) {
                ++swap_row;
            }
            if (swap_row == n) {
                return Int(0);
            }
            std::swap(a[k], a[swap_row]);
            parity = -parity;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous_pivot;
            }
        }
        previous_pivot = a[k][k];
    }
    return parity > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

inline std::vector<std::vector<Integer>> rows_of(const IntegerMatrix& m)
{
    std::vector<std::vector<Integer>> rows(m.size(), std::vector<Integer>(m.size()));
    for (std::size_t r = 0; r < m.size(); ++r) {
        for (std::size_t c = 0; c < m.size(); ++c) {
            rows[r][c] = m(r, c);
        }
    }
    return rows;
}

inline Integer minor_determinant(const IntegerMatrix& m, std::size_t skip_row, std::size_t skip_col)
{
    std::vector<std::vector<Integer>> rows;
    rows.reserve(m.size() - 1);
    for (std::size_t r = 0; r < m.size(); ++r) {
        if (r == skip_row) {
            continue;
        }
        std::vector<Integer> row;
        row.reserve(m.size() - 1);
        for (std::size_t c = 0; c < m.size(); ++c) {
            if (c != skip_col) {
                row.push_back(m(r, c));
            }
        }
        rows.push_back(std::move(row));
    }
    return bareiss_determinant(std::move(rows));
}

} // namespace detail

inline Integer determinant(const IntegerMatrix& m)
{
    return detail::bareiss_determinant(detail::rows_of(m));
}

/// Transposed cofactor matrix, so that M * adj(M) = det(M) * I.
inline IntegerMatrix adjugate(const IntegerMatrix& m)
{
    const std::size_t n = m.size();
    IntegerMatrix adj(n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Integer cofactor = detail::minor_determinant(m, r, c);
            adj(c, r) = ((r + c) % 2 == 0) ? cofactor : Integer(-cofactor);
        }
    }
    return adj;
}

inline bool is_unimodular(const IntegerMatrix& m)
{
    return boost::multiprecision::abs(determinant(m)) == 1;
}

/// Exact inverse of a matrix with determinant +-1.
inline IntegerMatrix unimodular_inverse(const IntegerMatrix& m)
{
    const Integer det = determinant(m);
    if (boost::multiprecision::abs(det) != 1) {
        throw ValidationError("cone is not unimodular (determinant " + det.str() + ")");
    }
    IntegerMatrix inv = adjugate(m);
    if (det == -1) {
        for (std::size_t r = 0; r < m.size(); ++r) {
            for (std::size_t c = 0; c < m.size(); ++c) {
                inv(r, c) = -inv(r, c);
            }
        }
    }
    return inv;
}

/// The unique integer x with M * x = b. Requires |det M| = 1.
inline LatticeVector solve_unimodular(const IntegerMatrix& m, const LatticeVector& b)
{
    return unimodular_inverse(m) * b;
}

/// The basis u_1..u_n of M with <u_i, v_j> = delta_ij, in the order of `basis`.
inline std::vector<LatticeVector> dual_basis(std::span<const LatticeVector> basis)
{
    if (basis.empty()) {
        return {};
    }
    const IntegerMatrix inverse = unimodular_inverse(IntegerMatrix::from_columns(basis));
    std::vector<LatticeVector> dual;
    dual.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        dual.push_back(inverse.row(i));
    }
    return dual;
}

/// Integer normal to the span of n-1 vectors in dimension n (signed maximal
/// minors). Zero iff the vectors are dependent. For n = 1 this is (1).
inline LatticeVector orthogonal_complement(std::span<const LatticeVector> vectors, std::size_t dim)
{
    if (vectors.size() + 1 != dim) {
        throw std::invalid_argument("orthogonal_complement needs exactly dim - 1 vectors");
    }
    LatticeVector normal(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        std::vector<std::vector<Integer>> rows;
        rows.reserve(vectors.size());
        for (const auto& v : vectors) {
            std::vector<Integer> row;
            row.reserve(dim - 1);
            for (std::size_t c = 0; c < dim; ++c) {
                if (c != k) {
                    row.push_back(v[c]);
                }
            }
            rows.push_back(std::move(row));
        }
        Integer minor = detail::bareiss_determinant(std::move(rows));
        normal[k] = (k % 2 == 0) ? minor : Integer(-minor);
    }
    return normal;
}

} // namespace toric

#endif
