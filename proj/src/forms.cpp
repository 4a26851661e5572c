#include "lieforge/forms.hpp"

#include <algorithm>

namespace lieforge {

namespace {

// Calls fn(tuple) for every strictly increasing k-tuple drawn from 0..n-1.
template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn)
{
    if (k > n)
        return;
    KForm::Index idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        fn(static_cast<const KForm::Index&>(idx));
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1)
            --pos;
        if (pos == 0)
            return;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < k; ++i)
            idx[i] = idx[i - 1] + 1;
    }
}

}  // namespace

int sort_with_sign(KForm::Index& indices)
{
    int sign = 1;
    // insertion sort, counting transpositions
    for (std::size_t i = 1; i < indices.size(); ++i)
        for (std::size_t j = i; j > 0 && indices[j - 1] >= indices[j]; --j) {
            if (indices[j - 1] == indices[j])
                return 0;
            std::swap(indices[j - 1], indices[j]);
            sign = -sign;
        }
    return sign;
}

KForm::KForm(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {}

KForm KForm::constant(std::size_t dim, const Scalar& value)
{
    KForm f(dim, 0);
    f.add_term({}, value);
    return f;
}

KForm KForm::one_form(const Vector& coeffs)
{
    KForm f(coeffs.size(), 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        f.add_term({i}, coeffs[i]);
    return f;
}

KForm KForm::two_form_from_gram(const Matrix& gram)
{
    if (!gram.is_square())
        throw DimensionError("two_form_from_gram: matrix is not square");
    KForm f(gram.rows(), 2);
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = i + 1; j < gram.cols(); ++j)
            f.add_term({i, j}, gram(i, j));
    return f;
}

void KForm::add_term(Index indices, const Scalar& value)
{
    if (indices.size() != degree_)
        throw DimensionError("add_term: expected " + std::to_string(degree_) + " indices");
    for (auto i : indices)
        if (i >= dim_)
            throw DimensionError("add_term: index out of range");
    if (lieforge::is_zero(value))
        return;
    const int sign = sort_with_sign(indices);
    if (sign == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(std::move(indices), 0);
    it->second += sign * value;
    if (lieforge::is_zero(it->second))
        terms_.erase(it);
}

Scalar KForm::coefficient(const Index& increasing) const
{
    const auto it = terms_.find(increasing);
    return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar KForm::evaluate_basis(Index indices) const
{
    if (indices.size() != degree_)
        throw DimensionError("evaluate_basis: wrong number of arguments");
    const int sign = sort_with_sign(indices);
    if (sign == 0)
        return 0;
    return sign * coefficient(indices);
}

Scalar KForm::evaluate(std::span<const Vector> vectors) const
{
    if (vectors.size() != degree_)
        throw DimensionError("evaluate: wrong number of arguments");
    for (const auto& v : vectors)
        if (v.size() != dim_)
            throw DimensionError("evaluate: vector of wrong dimension");
    Scalar sum = 0;
    for (const auto& [idx, c] : terms_) {
        Matrix minor(degree_, degree_);
        for (std::size_t a = 0; a < degree_; ++a)
            for (std::size_t b = 0; b < degree_; ++b)
                minor(a, b) = vectors[b][idx[a]];
        sum += c * determinant(std::move(minor));
    }
    return sum;
}

Scalar KForm::operator()(const Vector& x) const
{
    const Vector args[] = {x};
    return evaluate(args);
}

Scalar KForm::operator()(const Vector& x, const Vector& y) const
{
    const Vector args[] = {x, y};
    return evaluate(args);
}

Vector KForm::covector() const
{
    if (degree_ != 1)
        throw DimensionError("covector: not a 1-form");
    Vector v(dim_);
    for (const auto& [idx, c] : terms_)
        v[idx[0]] = c;
    return v;
}

Matrix KForm::gram() const
{
    if (degree_ != 2)
        throw DimensionError("gram: not a 2-form");
    Matrix m(dim_, dim_);
    for (const auto& [idx, c] : terms_) {
        m(idx[0], idx[1]) = c;
        m(idx[1], idx[0]) = -c;
    }
    return m;
}

KForm& KForm::operator+=(const KForm& other)
{
    if (dim_ != other.dim_ || degree_ != other.degree_)
        throw DimensionError("form addition: dimension or degree mismatch");
    for (const auto& [idx, c] : other.terms_)
        add_term(idx, c);
    return *this;
}

KForm& KForm::operator-=(const KForm& other)
{
    if (dim_ != other.dim_ || degree_ != other.degree_)
        throw DimensionError("form subtraction: dimension or degree mismatch");
    for (const auto& [idx, c] : other.terms_)
        add_term(idx, -c);
    return *this;
}

KForm& KForm::operator*=(const Scalar& factor)
{
    if (lieforge::is_zero(factor)) {
        terms_.clear();
        return *this;
    }
    for (auto& [idx, c] : terms_)
        c *= factor;
    return *this;
}

KForm operator+(KForm a, const KForm& b) { return a += b; }
KForm operator-(KForm a, const KForm& b) { return a -= b; }
KForm operator-(KForm a) { return a *= Scalar(-1); }
KForm operator*(const Scalar& factor, KForm a) { return a *= factor; }

KForm wedge(const KForm& a, const KForm& b)
{
    if (a.dim() != b.dim())
        throw DimensionError("wedge: dimension mismatch");
    KForm out(a.dim(), a.degree() + b.degree());
    if (out.degree() > out.dim())
        return out;
    for (const auto& [ia, ca] : a.terms())
        for (const auto& [ib, cb] : b.terms()) {
            KForm::Index joined = ia;
            joined.insert(joined.end(), ib.begin(), ib.end());
            out.add_term(std::move(joined), ca * cb);
        }
    return out;
}

int convention_sign(std::size_t degree, WedgeConvention convention)
{
    if (convention == WedgeConvention::Determinant || degree < 2)
        return 1;
    return (degree * (degree - 1) / 2) % 2 == 0 ? 1 : -1;
}

Scalar evaluate_wedge(std::span<const Vector> covectors, std::span<const Vector> vectors, WedgeConvention convention)
{
    const std::size_t k = covectors.size();
    if (vectors.size() != k)
        throw DimensionError("evaluate_wedge: need as many vectors as factors");
    Matrix m(k, k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            m(a, b) = dot(covectors[a], vectors[b]);
    return convention_sign(k, convention) * determinant(std::move(m));
}

KForm extend_by_zero(const KForm& form, std::size_t new_dim)
{
    if (new_dim < form.dim())
        throw DimensionError("extend_by_zero: target dimension is smaller");
    KForm out(new_dim, form.degree());
    for (const auto& [idx, c] : form.terms())
        out.add_term(idx, c);
    return out;
}

KForm pullback(const KForm& form, const Matrix& basis)
{
    if (basis.rows() != form.dim())
        throw DimensionError("pullback: basis vectors have the wrong dimension");
    const std::size_t m = basis.cols();
    KForm out(m, form.degree());
    for_each_combination(m, form.degree(), [&](const KForm::Index& idx) {
        std::vector<Vector> args;
        for (auto i : idx)
            args.push_back(basis.column(i));
        out.add_term(idx, form.evaluate(args));
    });
    return out;
}

KForm ce_differential(const LieAlgebra& g, const KForm& form)
{
    if (form.dim() != g.dim())
        throw DimensionError("ce_differential: form and algebra dimensions differ");
    const std::size_t n = g.dim();
    const std::size_t k = form.degree();
    KForm out(n, k + 1);
    if (k + 1 > n || form.is_zero())
        return out;

    for_each_combination(n, k + 1, [&](const KForm::Index& xs) {
        Scalar value = 0;
        for (std::size_t a = 0; a <= k; ++a)
            for (std::size_t b = a + 1; b <= k; ++b) {
                const Vector& br = g.basis_bracket(xs[a], xs[b]);
                if (br.is_zero())
                    continue;
                KForm::Index args(1);
                for (std::size_t t = 0; t <= k; ++t)
                    if (t != a && t != b)
                        args.push_back(xs[t]);
                Scalar inner = 0;
                for (std::size_t m = 0; m < n; ++m) {
                    if (is_zero(br[m]))
                        continue;
                    args[0] = m;
                    inner += br[m] * form.evaluate_basis(args);
                }
                value += ((a + b) % 2 == 0 ? inner : Scalar(-inner));
            }
        out.add_term(xs, value);
    });
    return out;
}

Subspace radical(const LieAlgebra& g, const KForm& form)
{
    if (form.degree() != 2 || form.dim() != g.dim())
        throw DimensionError("radical: expected a 2-form on the algebra");
    // B antisymmetric: B(x, .) = 0 iff gram^T x = 0 iff gram x = 0.
    return nullspace(form.gram());
}

std::vector<KForm> closed_two_forms(const LieAlgebra& g)
{
    const std::size_t n = g.dim();
    std::vector<KForm::Index> pairs;
    for_each_combination(n, 2, [&](const KForm::Index& idx) { pairs.push_back(idx); });
    std::vector<KForm::Index> triples;
    for_each_combination(n, 3, [&](const KForm::Index& idx) { triples.push_back(idx); });

    Matrix d(triples.size(), pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        KForm basis_form(n, 2);
        basis_form.add_term(pairs[p], 1);
        const KForm image = ce_differential(g, basis_form);
        for (std::size_t t = 0; t < triples.size(); ++t)
            d(t, p) = image.coefficient(triples[t]);
    }

    std::vector<KForm> out;
    if (triples.empty()) {
        for (const auto& p : pairs) {
            KForm f(n, 2);
            f.add_term(p, 1);
            out.push_back(std::move(f));
        }
        return out;
    }
    const Subspace closed = nullspace(d);
    for (const auto& v : closed.basis()) {
        KForm f(n, 2);
        for (std::size_t p = 0; p < pairs.size(); ++p)
            f.add_term(pairs[p], v[p]);
        out.push_back(std::move(f));
    }
    return out;
}

TopContactResult top_contact_test(const LieAlgebra& g, const KForm& alpha)
{
    if (alpha.degree() != 1 || alpha.dim() != g.dim())
        throw DimensionError("top_contact_test: expected a 1-form on the algebra");
    TopContactResult out;
    const std::size_t n = g.dim();
    if (n % 2 == 0) {
        out.coefficient = 0;
        out.reason = "dimension " + std::to_string(n) + " is even";
        return out;
    }
    const KForm d_alpha = ce_differential(g, alpha);
    KForm top = alpha;
    for (std::size_t i = 0; i < n / 2; ++i)
        top = wedge(top, d_alpha);
    KForm::Index all(n);
    for (std::size_t i = 0; i < n; ++i)
        all[i] = i;
    out.coefficient = top.coefficient(all);
    out.verdict = !is_zero(out.coefficient);
    out.reason = out.verdict ? "top-degree coefficient is nonzero" : "alpha∧(dalpha)^" + std::to_string(n / 2) + " = 0";
    return out;
}

}  // namespace lieforge
