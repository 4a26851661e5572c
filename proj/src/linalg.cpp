#include "lieforge/linalg.hpp"

#include <algorithm>
#include <utility>

namespace lieforge {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what)
{
    if (a != b)
        throw DimensionError(std::string(what) + ": size mismatch (" + std::to_string(a) + " vs " +
                             std::to_string(b) + ")");
}

}  // namespace

Vector Vector::unit(std::size_t size, std::size_t index)
{
    Vector v(size);
    v[index] = 1;
    return v;
}

bool Vector::is_zero() const
{
    return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& s) { return lieforge::is_zero(s); });
}

std::size_t Vector::leading_index() const
{
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (!lieforge::is_zero(coords_[i]))
            return i;
    return coords_.size();
}

Vector& Vector::operator+=(const Vector& other)
{
    require_same_size(size(), other.size(), "vector addition");
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords_[i] += other.coords_[i];
    return *this;
}

Vector& Vector::operator-=(const Vector& other)
{
    require_same_size(size(), other.size(), "vector subtraction");
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords_[i] -= other.coords_[i];
    return *this;
}

Vector& Vector::operator*=(const Scalar& factor)
{
    for (auto& c : coords_)
        c *= factor;
    return *this;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator-(Vector v) { return v *= Scalar(-1); }
Vector operator*(const Scalar& factor, Vector v) { return v *= factor; }

Scalar dot(const Vector& lhs, const Vector& rhs)
{
    require_same_size(lhs.size(), rhs.size(), "dot product");
    Scalar sum = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i)
        if (!is_zero(lhs[i]))
            sum += lhs[i] * rhs[i];
    return sum;
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::diagonal(std::span<const Scalar> entries)
{
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
        m(i, i) = entries[i];
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        require_same_size(rows[r].size(), cols, "matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns)
{
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        m.set_column(c, columns[c]);
    return m;
}

Vector Matrix::row(std::size_t r) const
{
    Vector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        v[c] = (*this)(r, c);
    return v;
}

Vector Matrix::column(std::size_t c) const
{
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

void Matrix::set_column(std::size_t c, const Vector& v)
{
    require_same_size(v.size(), rows_, "matrix column");
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return lieforge::is_zero(s); });
}

Matrix& Matrix::operator+=(const Matrix& other)
{
    require_same_size(rows_, other.rows_, "matrix addition");
    require_same_size(cols_, other.cols_, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += other.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other)
{
    require_same_size(rows_, other.rows_, "matrix subtraction");
    require_same_size(cols_, other.cols_, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= other.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& factor)
{
    for (auto& s : data_)
        s *= factor;
    return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(const Scalar& factor, Matrix m) { return m *= factor; }
Matrix operator-(Matrix m) { return m *= Scalar(-1); }

Matrix operator*(const Matrix& lhs, const Matrix& rhs)
{
    require_same_size(lhs.cols(), rhs.rows(), "matrix product");
    Matrix out(lhs.rows(), rhs.cols());
    for (std::size_t r = 0; r < lhs.rows(); ++r)
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const Scalar& a = lhs(r, k);
            if (is_zero(a))
                continue;
            for (std::size_t c = 0; c < rhs.cols(); ++c)
                out(r, c) += a * rhs(k, c);
        }
    return out;
}

Vector operator*(const Matrix& m, const Vector& v)
{
    require_same_size(m.cols(), v.size(), "matrix-vector product");
    Vector out(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_zero(v[c]))
            continue;
        for (std::size_t r = 0; r < m.rows(); ++r)
            out[r] += m(r, c) * v[c];
    }
    return out;
}

Matrix outer(const Vector& column, const Vector& row)
{
    Matrix m(column.size(), row.size());
    for (std::size_t r = 0; r < column.size(); ++r)
        for (std::size_t c = 0; c < row.size(); ++c)
            m(r, c) = column[r] * row[c];
    return m;
}

RowEchelon rref(Matrix m)
{
    RowEchelon out;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
        std::size_t found = pivot_row;
        while (found < m.rows() && is_zero(m(found, col)))
            ++found;
        if (found == m.rows())
            continue;
        if (found != pivot_row)
            for (std::size_t c = 0; c < m.cols(); ++c)
                std::swap(m(found, c), m(pivot_row, c));

        const Scalar inv = 1 / m(pivot_row, col);
        for (std::size_t c = col; c < m.cols(); ++c)
            m(pivot_row, c) *= inv;

        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == pivot_row || is_zero(m(r, col)))
                continue;
            const Scalar factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m(r, c) -= factor * m(pivot_row, c);
        }
        out.pivots.push_back(col);
        ++pivot_row;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const Matrix& m)
{
    return rref(m).pivots.size();
}

Scalar determinant(Matrix m)
{
    if (!m.is_square())
        throw DimensionError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    Scalar det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t found = col;
        while (found < n && is_zero(m(found, col)))
            ++found;
        if (found == n)
            return 0;
        if (found != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(m(found, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (is_zero(m(r, col)))
                continue;
            const Scalar factor = m(r, col) / m(col, col);
            for (std::size_t c = col; c < n; ++c)
                m(r, c) -= factor * m(col, c);
        }
    }
    return det;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    if (!m.is_square())
        throw DimensionError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix augmented(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            augmented(r, c) = m(r, c);
        augmented(r, n + r) = 1;
    }
    const RowEchelon e = rref(std::move(augmented));
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
        return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            inv(r, c) = e.reduced(r, n + c);
    return inv;
}

std::optional<std::size_t> first_nonpositive_minor(const Matrix& m)
{
    if (!m.is_square())
        throw DimensionError("definiteness of a non-square matrix");
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        Matrix lead(k, k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c)
                lead(r, c) = m(r, c);
        if (sgn(determinant(std::move(lead))) <= 0)
            return k;
    }
    return std::nullopt;
}

bool is_positive_definite(const Matrix& m)
{
    return !first_nonpositive_minor(m).has_value();
}

Subspace Subspace::span(std::size_t ambient_dim, std::span<const Vector> vectors)
{
    Subspace out(ambient_dim);
    if (vectors.empty())
        return out;
    Matrix m(vectors.size(), ambient_dim);
    for (std::size_t r = 0; r < vectors.size(); ++r) {
        require_same_size(vectors[r].size(), ambient_dim, "subspace span");
        for (std::size_t c = 0; c < ambient_dim; ++c)
            m(r, c) = vectors[r][c];
    }
    const RowEchelon e = rref(std::move(m));
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        out.basis_.push_back(e.reduced.row(r));
    return out;
}

Subspace Subspace::whole(std::size_t ambient_dim)
{
    Subspace out(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i)
        out.basis_.push_back(Vector::unit(ambient_dim, i));
    return out;
}

bool Subspace::contains(const Vector& v) const
{
    require_same_size(v.size(), ambient_, "subspace membership");
    // Reduce v against the echelon basis; membership iff nothing is left.
    Vector rest = v;
    for (const auto& b : basis_) {
        const std::size_t p = b.leading_index();
        if (!lieforge::is_zero(rest[p]))
            rest -= rest[p] * b;
    }
    return rest.is_zero();
}

Subspace nullspace(const Matrix& m)
{
    const RowEchelon e = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;

    std::vector<Vector> vectors;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        Vector v(n);
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.reduced(r, free);
        vectors.push_back(std::move(v));
    }
    return Subspace::span(n, vectors);
}

std::optional<Vector> solve(const Matrix& m, const Vector& rhs)
{
    require_same_size(m.rows(), rhs.size(), "linear solve");
    AffineSystem system(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (!system.add(m.row(r), rhs[r], "row " + std::to_string(r + 1)))
            return std::nullopt;
    return system.particular();
}

bool AffineSystem::add(Vector coeffs, Scalar rhs, std::string label)
{
    require_same_size(coeffs.size(), unknowns_, "affine system row");
    if (failing_label_)
        return false;

    for (const auto& row : rows_) {
        if (is_zero(coeffs[row.pivot]))
            continue;
        const Scalar factor = coeffs[row.pivot];
        coeffs -= factor * row.coeffs;
        rhs -= factor * row.rhs;
    }

    const std::size_t pivot = coeffs.leading_index();
    if (pivot == unknowns_) {
        if (!is_zero(rhs)) {
            failing_label_ = std::move(label);
            return false;
        }
        return true;
    }

    const Scalar inv = 1 / coeffs[pivot];
    coeffs *= inv;
    rhs *= inv;
    for (auto& row : rows_) {
        if (is_zero(row.coeffs[pivot]))
            continue;
        const Scalar factor = row.coeffs[pivot];
        row.coeffs -= factor * coeffs;
        row.rhs -= factor * rhs;
    }
    const auto at = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                                     [](const Row& r, std::size_t p) { return r.pivot < p; });
    rows_.insert(at, Row{std::move(coeffs), std::move(rhs), pivot});
    return true;
}

std::optional<Vector> AffineSystem::particular() const
{
    if (failing_label_)
        return std::nullopt;
    Vector x(unknowns_);
    for (const auto& row : rows_)
        x[row.pivot] = row.rhs;
    return x;
}

std::vector<Vector> AffineSystem::homogeneous_basis() const
{
    std::vector<bool> is_pivot(unknowns_, false);
    for (const auto& row : rows_)
        is_pivot[row.pivot] = true;

    std::vector<Vector> vectors;
    for (std::size_t free = 0; free < unknowns_; ++free) {
        if (is_pivot[free])
            continue;
        Vector v(unknowns_);
        v[free] = 1;
        for (const auto& row : rows_)
            v[row.pivot] = -row.coeffs[free];
        vectors.push_back(std::move(v));
    }
    return Subspace::span(unknowns_, vectors).basis();
}

// "[a b; c d]", row by row.
std::string matrix_text(const Matrix& m)
{
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += r == 0 ? "[" : "; ";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c)
                out += " ";
            out += to_string(m(r, c));
        }
    }
    return out + "]";
}

}  // namespace lieforge
