#pragma once

// Dense linear algebra over a prime field F_p with exact arithmetic.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stmod {

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

/// The prime field F_p, 2 <= p <= 97. Elements are canonical residues 0..p-1.
class PrimeField {
public:
    explicit PrimeField(unsigned p);

    unsigned p() const { return p_; }

    Scalar add(Scalar a, Scalar b) const { return (a + b) % p_; }
    Scalar sub(Scalar a, Scalar b) const { return (a + p_ - b) % p_; }
    Scalar mul(Scalar a, Scalar b) const { return (a * b) % p_; }
    Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
    Scalar inv(Scalar a) const;
    /// Canonical residue of an arbitrary integer.
    Scalar reduce(long long v) const;

    bool operator==(const PrimeField&) const = default;

private:
    unsigned p_;
};

bool is_prime(unsigned n);

/// Row-major dense matrix over a prime field.
class Matrix {
public:
    Matrix(PrimeField field, std::size_t rows, std::size_t cols);

    static Matrix identity(PrimeField field, std::size_t n);
    static Matrix from_rows(PrimeField field, const std::vector<std::vector<long long>>& rows);
    static Matrix column(PrimeField field, const Vec& v);
    static Matrix hstack(std::span<const Matrix> blocks);
    static Matrix vstack(std::span<const Matrix> blocks);
    static Matrix block_diagonal(std::span<const Matrix> blocks);

    PrimeField field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, long long v) { (*this)(r, c) = field_.reduce(v); }

    Vec col(std::size_t c) const;
    Vec row(std::size_t r) const;
    void set_col(std::size_t c, const Vec& v);
    /// Submatrix of the given rows and columns, in the given order.
    Matrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
    Matrix select_cols(std::span<const std::size_t> cols) const;
    Matrix select_rows(std::span<const std::size_t> rows) const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

    Matrix transpose() const;
    Matrix power(unsigned e) const;
    bool is_zero() const;
    bool is_identity() const;
    /// Entries flattened row-major; used as coordinates of a matrix in a hom space.
    const Vec& entries() const { return data_; }
    static Matrix from_entries(PrimeField field, std::size_t rows, std::size_t cols, Vec entries);

    Matrix operator*(const Matrix& rhs) const;
    Vec operator*(const Vec& v) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(Scalar s) const;

    bool operator==(const Matrix& rhs) const;

    std::vector<std::vector<long long>> to_rows() const;
    std::string to_string() const;

private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    Vec data_;
};

struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form by leftmost-pivot Gauss-Jordan elimination.
RowEchelon rref(const Matrix& a);
std::size_t rank(const Matrix& a);

/// Columns form a basis of {x : A x = 0}; one column per free variable,
/// with a 1 in that variable's slot and 0 in every other free slot.
Matrix kernel_basis(const Matrix& a);

/// A particular solution of A x = b with all free variables set to zero.
/// Throws std::invalid_argument when b has the wrong length.
std::optional<Vec> solve(const Matrix& a, const Vec& b);

/// Solves A X = B column by column. Throws on a row-count mismatch.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& a);

/// A subspace of F_p^n held in canonical form: the basis columns are the
/// transposed nonzero rows of an RREF, so coordinates of a member vector are
/// just its entries at the pivot positions.
class Subspace {
public:
    /// Span of the columns of `spanning` (columns may be dependent).
    explicit Subspace(const Matrix& spanning);
    /// Span of a list of vectors of length n.
    Subspace(PrimeField field, std::size_t ambient, std::span<const Vec> vectors);

    std::size_t ambient_dim() const { return basis_.rows(); }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const Vec& v) const;
    /// Coordinates of v in the canonical basis; v must lie in the subspace.
    Vec coordinates(const Vec& v) const;
    /// Coordinates of each column of m; every column must lie in the subspace.
    Matrix coordinates(const Matrix& m) const;
    /// v minus its component along the canonical basis, zero at every pivot.
    Vec reduce(const Vec& v) const;

private:
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

} // namespace stmod
