#include "stmod/exactlin.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace stmod {

bool is_prime(unsigned n)
{
    if (n < 2)
        return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

PrimeField::PrimeField(unsigned p) : p_(p)
{
    if (p < 2 || p > 97 || !is_prime(p))
        throw std::invalid_argument("field characteristic must be a prime in [2, 97], got " + std::to_string(p));
}

Scalar PrimeField::inv(Scalar a) const
{
    if (a % p_ == 0)
        throw std::domain_error("inverse of zero in F_" + std::to_string(p_));
    // Fermat: a^(p-2)
    Scalar result = 1, base = a % p_;
    for (unsigned e = p_ - 2; e > 0; e >>= 1) {
        if (e & 1)
            result = mul(result, base);
        base = mul(base, base);
    }
    return result;
}

Scalar PrimeField::reduce(long long v) const
{
    long long r = v % static_cast<long long>(p_);
    if (r < 0)
        r += p_;
    return static_cast<Scalar>(r);
}

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0)
{
}

Matrix Matrix::identity(PrimeField field, std::size_t n)
{
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(PrimeField field, const std::vector<std::vector<long long>>& rows)
{
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), nc);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != nc)
            throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < nc; ++c)
            m.set(r, c, rows[r][c]);
    }
    return m;
}

Matrix Matrix::column(PrimeField field, const Vec& v)
{
    Matrix m(field, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        m(i, 0) = v[i] % field.p();
    return m;
}

Matrix Matrix::from_entries(PrimeField field, std::size_t rows, std::size_t cols, Vec entries)
{
    if (entries.size() != rows * cols)
        throw std::invalid_argument("entry count does not match shape");
    Matrix m(field, rows, cols);
    for (auto& e : entries)
        e %= field.p();
    m.data_ = std::move(entries);
    return m;
}

Matrix Matrix::hstack(std::span<const Matrix> blocks)
{
    if (blocks.empty())
        throw std::invalid_argument("hstack of no blocks");
    std::size_t nr = blocks.front().rows(), nc = 0;
    for (const auto& b : blocks) {
        if (b.rows() != nr)
            throw std::invalid_argument("hstack row mismatch");
        nc += b.cols();
    }
    Matrix m(blocks.front().field(), nr, nc);
    std::size_t c0 = 0;
    for (const auto& b : blocks) {
        m.set_block(0, c0, b);
        c0 += b.cols();
    }
    return m;
}

Matrix Matrix::vstack(std::span<const Matrix> blocks)
{
    if (blocks.empty())
        throw std::invalid_argument("vstack of no blocks");
    std::size_t nc = blocks.front().cols(), nr = 0;
    for (const auto& b : blocks) {
        if (b.cols() != nc)
            throw std::invalid_argument("vstack column mismatch");
        nr += b.rows();
    }
    Matrix m(blocks.front().field(), nr, nc);
    std::size_t r0 = 0;
    for (const auto& b : blocks) {
        m.set_block(r0, 0, b);
        r0 += b.rows();
    }
    return m;
}

Matrix Matrix::block_diagonal(std::span<const Matrix> blocks)
{
    if (blocks.empty())
        throw std::invalid_argument("block_diagonal of no blocks");
    std::size_t nr = 0, nc = 0;
    for (const auto& b : blocks) {
        nr += b.rows();
        nc += b.cols();
    }
    Matrix m(blocks.front().field(), nr, nc);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        m.set_block(r0, c0, b);
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

Vec Matrix::col(std::size_t c) const
{
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

Vec Matrix::row(std::size_t r) const
{
    return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

void Matrix::set_col(std::size_t c, const Vec& v)
{
    if (v.size() != rows_)
        throw std::invalid_argument("set_col length mismatch");
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = v[r] % field_.p();
}

Matrix Matrix::select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const
{
    Matrix m(field_, rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            m(i, j) = (*this)(rows[i], cols[j]);
    return m;
}

Matrix Matrix::select_cols(std::span<const std::size_t> cols) const
{
    Matrix m(field_, rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j)
            m(r, j) = (*this)(r, cols[j]);
    return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const
{
    Matrix m(field_, rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < cols_; ++c)
            m(i, c) = (*this)(rows[i], c);
    return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw std::out_of_range("block outside matrix");
    Matrix m(field_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c)
            m(r, c) = (*this)(r0 + r, c0 + c);
    return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b)
{
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
        throw std::out_of_range("block outside matrix");
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
            (*this)(r0 + r, c0 + c) = b(r, c);
}

Matrix Matrix::transpose() const
{
    Matrix m(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            m(c, r) = (*this)(r, c);
    return m;
}

Matrix Matrix::power(unsigned e) const
{
    if (rows_ != cols_)
        throw std::invalid_argument("power of a non-square matrix");
    Matrix result = identity(field_, rows_), base = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1)
            result = result * base;
        if (e > 1)
            base = base * base;
    }
    return result;
}

bool Matrix::is_zero() const
{
    for (auto v : data_)
        if (v != 0)
            return false;
    return true;
}

bool Matrix::is_identity() const
{
    return rows_ == cols_ && *this == identity(field_, rows_);
}

Matrix Matrix::operator*(const Matrix& rhs) const
{
    if (cols_ != rhs.rows_ || field_ != rhs.field_)
        throw std::invalid_argument("matrix product shape mismatch: " + std::to_string(rows_) + "x" +
                                    std::to_string(cols_) + " * " + std::to_string(rhs.rows_) + "x" +
                                    std::to_string(rhs.cols_));
    const unsigned p = field_.p();
    Matrix out(field_, rows_, rhs.cols_);
    std::vector<std::uint64_t> acc(rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols_; ++k) {
            const std::uint64_t a = (*this)(r, k);
            if (a == 0)
                continue;
            const Scalar* brow = &rhs.data_[k * rhs.cols_];
            for (std::size_t c = 0; c < rhs.cols_; ++c)
                acc[c] += a * brow[c];
        }
        for (std::size_t c = 0; c < rhs.cols_; ++c)
            out(r, c) = static_cast<Scalar>(acc[c] % p);
    }
    return out;
}

Vec Matrix::operator*(const Vec& v) const
{
    if (v.size() != cols_)
        throw std::invalid_argument("matrix-vector shape mismatch");
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c)
            acc += static_cast<std::uint64_t>((*this)(r, c)) * v[c];
        out[r] = static_cast<Scalar>(acc % field_.p());
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || field_ != rhs.field_)
        throw std::invalid_argument("matrix sum shape mismatch");
    Matrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = field_.add(data_[i], rhs.data_[i]);
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || field_ != rhs.field_)
        throw std::invalid_argument("matrix difference shape mismatch");
    Matrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = field_.sub(data_[i], rhs.data_[i]);
    return out;
}

Matrix Matrix::scaled(Scalar s) const
{
    Matrix out(*this);
    for (auto& v : out.data_)
        v = field_.mul(v, s % field_.p());
    return out;
}

bool Matrix::operator==(const Matrix& rhs) const
{
    return field_ == rhs.field_ && rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

std::vector<std::vector<long long>> Matrix::to_rows() const
{
    std::vector<std::vector<long long>> out(rows_, std::vector<long long>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out[r][c] = (*this)(r, c);
    return out;
}

std::string Matrix::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ",[" : "[");
        for (std::size_t c = 0; c < cols_; ++c)
            os << (c ? "," : "") << (*this)(r, c);
        os << "]";
    }
    os << "]";
    return os.str();
}

RowEchelon rref(const Matrix& a)
{
    const PrimeField f = a.field();
    const unsigned p = f.p();
    Matrix m = a;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col) == 0)
            ++sel;
        if (sel == m.rows())
            continue;
        if (sel != row)
            for (std::size_t c = col; c < m.cols(); ++c)
                std::swap(m(sel, c), m(row, c));
        const Scalar scale = f.inv(m(row, col));
        for (std::size_t c = col; c < m.cols(); ++c)
            m(row, c) = f.mul(m(row, c), scale);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0)
                continue;
            const Scalar factor = p - m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (m(row, c) != 0)
                    m(r, c) = (m(r, c) + factor * m(row, c)) % p;
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& a)
{
    return rref(a).rank();
}

Matrix kernel_basis(const Matrix& a)
{
    const PrimeField f = a.field();
    const RowEchelon e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);

    Matrix basis(f, a.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const std::size_t fc = free_cols[k];
        basis(fc, k) = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            basis(e.pivots[r], k) = f.neg(e.reduced(r, fc));
    }
    return basis;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b)
{
    if (b.rows() != a.rows())
        throw std::invalid_argument("solve: right-hand side has " + std::to_string(b.rows()) +
                                    " rows, matrix has " + std::to_string(a.rows()));
    const Matrix blocks[] = {a, b};
    const RowEchelon e = rref(Matrix::hstack(blocks));
    Matrix x(a.field(), a.cols(), b.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] >= a.cols())
            return std::nullopt;
        for (std::size_t c = 0; c < b.cols(); ++c)
            x(e.pivots[r], c) = e.reduced(r, a.cols() + c);
    }
    return x;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b)
{
    if (b.size() != a.rows())
        throw std::invalid_argument("solve: right-hand side has " + std::to_string(b.size()) +
                                    " entries, matrix has " + std::to_string(a.rows()) + " rows");
    auto x = solve(a, Matrix::column(a.field(), b));
    if (!x)
        return std::nullopt;
    return x->col(0);
}

std::optional<Matrix> inverse(const Matrix& a)
{
    if (a.rows() != a.cols())
        return std::nullopt;
    if (rank(a) != a.rows())
        return std::nullopt;
    return solve(a, Matrix::identity(a.field(), a.rows()));
}

Subspace::Subspace(const Matrix& spanning) : basis_(spanning.field(), spanning.rows(), 0)
{
    const RowEchelon e = rref(spanning.transpose());
    pivots_ = e.pivots;
    std::vector<std::size_t> rows(e.rank());
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i] = i;
    basis_ = e.reduced.select_rows(rows).transpose();
}

static Matrix columns_of(PrimeField field, std::size_t ambient, std::span<const Vec> vectors)
{
    Matrix m(field, ambient, vectors.size());
    for (std::size_t j = 0; j < vectors.size(); ++j)
        m.set_col(j, vectors[j]);
    return m;
}

Subspace::Subspace(PrimeField field, std::size_t ambient, std::span<const Vec> vectors)
    : Subspace(columns_of(field, ambient, vectors))
{
}

Vec Subspace::reduce(const Vec& v) const
{
    if (v.size() != ambient_dim())
        throw std::invalid_argument("vector length does not match subspace ambient dimension");
    const PrimeField f = basis_.field();
    Vec out(v);
    for (auto& x : out)
        x %= f.p();
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
        const Scalar c = out[pivots_[k]];
        if (c == 0)
            continue;
        const Scalar factor = f.neg(c);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = f.add(out[i], f.mul(factor, basis_(i, k)));
    }
    return out;
}

bool Subspace::contains(const Vec& v) const
{
    for (auto x : reduce(v))
        if (x != 0)
            return false;
    return true;
}

Vec Subspace::coordinates(const Vec& v) const
{
    if (!contains(v))
        throw std::invalid_argument("vector does not lie in the subspace");
    Vec c(pivots_.size());
    for (std::size_t k = 0; k < pivots_.size(); ++k)
        c[k] = v[pivots_[k]] % basis_.field().p();
    return c;
}

Matrix Subspace::coordinates(const Matrix& m) const
{
    Matrix out(m.field(), dim(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        out.set_col(j, coordinates(m.col(j)));
    return out;
}

} // namespace stmod
