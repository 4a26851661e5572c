#pragma once

#include "lieforge/algebra.hpp"
#include "lieforge/linalg.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace lieforge {

// Alternating k-linear form on an n-dimensional space, stored by its values
// on strictly increasing basis tuples: coefficient(I) = form(e_I). Under the
// determinant convention this is also the coefficient of e^{i1}∧...∧e^{ik}.
// Zero coefficients are never stored, so equal forms compare equal.
class KForm {
public:
    using Index = std::vector<std::size_t>;

    KForm(std::size_t dim, std::size_t degree);

    static KForm constant(std::size_t dim, const Scalar& value);
    static KForm one_form(const Vector& coeffs);
    // Degree-2 form from the values B(e_i, e_j), read from the strict upper
    // triangle of `gram`.
    static KForm two_form_from_gram(const Matrix& gram);

    std::size_t dim() const { return dim_; }
    std::size_t degree() const { return degree_; }
    const std::map<Index, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Adds `value` to the coefficient on `indices`, which may be in any order
    // (the alternating sign is applied; repeated indices contribute nothing).
    void add_term(Index indices, const Scalar& value);

    Scalar coefficient(const Index& increasing) const;
    // Value on basis vectors in any order.
    Scalar evaluate_basis(Index indices) const;
    // Value on arbitrary vectors.
    Scalar evaluate(std::span<const Vector> vectors) const;
    Scalar operator()(const Vector& x) const;
    Scalar operator()(const Vector& x, const Vector& y) const;

    // Coefficient vector of a 1-form.
    Vector covector() const;
    // n x n matrix of B(e_i, e_j) for a 2-form.
    Matrix gram() const;

    KForm& operator+=(const KForm& other);
    KForm& operator-=(const KForm& other);
    KForm& operator*=(const Scalar& factor);

    friend bool operator==(const KForm&, const KForm&) = default;

private:
    std::size_t dim_;
    std::size_t degree_;
    std::map<Index, Scalar> terms_;
};

KForm operator+(KForm a, const KForm& b);
KForm operator-(KForm a, const KForm& b);
KForm operator-(KForm a);
KForm operator*(const Scalar& factor, KForm a);

// Sign of a permutation sorting `indices`, with the sorted result; 0 when an
// index repeats.
int sort_with_sign(KForm::Index& indices);

// Wedge product under the determinant convention:
// (a∧b)(x1,x2) = a(x1)b(x2) - a(x2)b(x1) for 1-forms.
KForm wedge(const KForm& a, const KForm& b);

// Evaluation convention used for printing wedge expressions. The paper-style
// convention (contraction by interior products applied right to left)
// differs from the determinant one by (-1)^{k(k-1)/2} in degree k.
enum class WedgeConvention { Determinant, Paper };
int convention_sign(std::size_t degree, WedgeConvention convention);
// (chi_1 ∧ ... ∧ chi_k)(x_1, ..., x_k) under the given convention.
Scalar evaluate_wedge(std::span<const Vector> covectors, std::span<const Vector> vectors, WedgeConvention convention);

// Extends a form on the first `form.dim()` coordinates of a larger space by
// zero on the new basis vectors.
KForm extend_by_zero(const KForm& form, std::size_t new_dim);
// Pulls a form back along the linear map whose columns are `basis`.
KForm pullback(const KForm& form, const Matrix& basis);

// Chevalley–Eilenberg differential with trivial coefficients:
// (dw)(x_0..x_k) = sum_{i<j} (-1)^{i+j} w([x_i,x_j], x_0..^i..^j..x_k),
// so d(alpha)(x,y) = -alpha([x,y]). Degree overflow gives the zero form.
KForm ce_differential(const LieAlgebra& g, const KForm& form);

// {x : B(x, y) = 0 for all y}
Subspace radical(const LieAlgebra& g, const KForm& form);

// Closed 2-forms (the cocycle space), as a basis of forms.
std::vector<KForm> closed_two_forms(const LieAlgebra& g);

struct TopContactResult {
    bool verdict = false;
    Scalar coefficient;  // coefficient of alpha∧(dalpha)^m on e_1∧...∧e_n
    std::string reason;
};

// alpha∧(dalpha)^m != 0 on a (2m+1)-dimensional algebra.
TopContactResult top_contact_test(const LieAlgebra& g, const KForm& alpha);

}  // namespace lieforge
