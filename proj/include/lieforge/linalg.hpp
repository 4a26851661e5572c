#pragma once

#include "lieforge/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieforge {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t size) : coords_(size) {}
    Vector(std::initializer_list<Scalar> coords) : coords_(coords) {}
    explicit Vector(std::vector<Scalar> coords) : coords_(std::move(coords)) {}

    static Vector unit(std::size_t size, std::size_t index);

    std::size_t size() const { return coords_.size(); }
    const Scalar& operator[](std::size_t i) const { return coords_[i]; }
    Scalar& operator[](std::size_t i) { return coords_[i]; }
    std::span<const Scalar> coords() const { return coords_; }
    auto begin() const { return coords_.begin(); }
    auto end() const { return coords_.end(); }

    bool is_zero() const;
    // Index of the first nonzero coordinate, or size() for the zero vector.
    std::size_t leading_index() const;

    Vector& operator+=(const Vector& other);
    Vector& operator-=(const Vector& other);
    Vector& operator*=(const Scalar& factor);

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<Scalar> coords_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator-(Vector v);
Vector operator*(const Scalar& factor, Vector v);
Scalar dot(const Vector& lhs, const Vector& rhs);

// Dense row-major rational matrix. As a linear map on an algebra, column j
// holds the image of basis vector e_j.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const Scalar> entries);
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);
    static Matrix from_columns(std::span<const Vector> columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    void set_column(std::size_t c, const Vector& v);

    Matrix transpose() const;
    bool is_zero() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(const Scalar& factor);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Scalar& factor, Matrix m);
Matrix operator-(Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Vector operator*(const Matrix& m, const Vector& v);

// Linear endomorphisms of an algebra (D, J, Phi, ad x) are square matrices.
using LinearMap = Matrix;

// Outer product v ⊗ w as the map x -> w(x) v, i.e. the matrix v w^T.
Matrix outer(const Vector& column, const Vector& row);

struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

RowEchelon rref(Matrix m);
std::size_t rank(const Matrix& m);
Scalar determinant(Matrix m);
std::optional<Matrix> inverse(const Matrix& m);

// Sylvester's criterion: every leading principal minor is positive. Returns
// the 1-based order of the first non-positive minor, or nullopt when the
// matrix is positive-definite. The caller is responsible for symmetry.
std::optional<std::size_t> first_nonpositive_minor(const Matrix& m);
bool is_positive_definite(const Matrix& m);

// Linear subspace of Q^n held as the rows of its reduced row echelon form,
// so two equal subspaces have identical representations.
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    static Subspace span(std::size_t ambient_dim, std::span<const Vector> vectors);
    static Subspace whole(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    bool is_zero() const { return basis_.empty(); }
    const std::vector<Vector>& basis() const { return basis_; }
    bool contains(const Vector& v) const;

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    std::size_t ambient_;
    std::vector<Vector> basis_;
};

// {x : m x = 0}
Subspace nullspace(const Matrix& m);

// One solution of m x = rhs (free variables set to zero), if any.
std::optional<Vector> solve(const Matrix& m, const Vector& rhs);

// Incrementally assembled affine system. Rows are reduced as they arrive, so
// the first row that makes the system inconsistent is known by its label.
class AffineSystem {
public:
    explicit AffineSystem(std::size_t unknowns) : unknowns_(unknowns) {}

    // Returns false once the system is inconsistent.
    bool add(Vector coeffs, Scalar rhs, std::string label);

    std::size_t unknowns() const { return unknowns_; }
    bool consistent() const { return !failing_label_; }
    const std::optional<std::string>& failing_label() const { return failing_label_; }

    // Particular solution with all free variables zero.
    std::optional<Vector> particular() const;
    // Basis of the homogeneous solution space, in reduced echelon order.
    std::vector<Vector> homogeneous_basis() const;

private:
    struct Row {
        Vector coeffs;
        Scalar rhs;
        std::size_t pivot;
    };

    std::size_t unknowns_;
    std::vector<Row> rows_;
    std::optional<std::string> failing_label_;
};

std::string matrix_text(const Matrix& m);

}  // namespace lieforge
