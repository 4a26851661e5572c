#pragma once

// Slow, independent reference computations. Nothing here calls the library's
// exterior calculus: forms are read only through KForm::coefficient on
// sorted tuples, signs come from counting inversions, and every sum runs over
// explicit permutations.

#include "lieforge/algebra.hpp"
#include "lieforge/forms.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace lieforge::testing::oracle {

using Tuple = std::vector<std::size_t>;

inline int inversion_sign(const Tuple& t)
{
    int sign = 1;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            if (t[i] == t[j])
                return 0;
            if (t[i] > t[j])
                sign = -sign;
        }
    return sign;
}

// f(e_t) for any ordering of t.
inline Scalar value(const KForm& f, const Tuple& t)
{
    int s = inversion_sign(t);
    if (s == 0)
        return 0;
    Tuple sorted = t;
    std::sort(sorted.begin(), sorted.end());
    return s * f.coefficient(sorted);
}

// f(v, e_rest...) by linearity in the first slot.
inline Scalar value_first(const KForm& f, const Vector& v, const Tuple& rest)
{
    Scalar total = 0;
    for (std::size_t m = 0; m < v.size(); ++m) {
        if (is_zero(v[m]))
            continue;
        Tuple t{m};
        t.insert(t.end(), rest.begin(), rest.end());
        total += v[m] * value(f, t);
    }
    return total;
}

inline Vector lie_bracket(const LieAlgebra& g, const Vector& x, const Vector& y)
{
    const std::size_t n = g.dim();
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (is_zero(x[i]) || is_zero(y[j]))
                continue;
            for (std::size_t k = 0; k < n; ++k)
                out[k] += x[i] * y[j] * g.constant(i, j, k);
        }
    return out;
}

template <class F>
void for_each_increasing(std::size_t n, std::size_t k, F&& f)
{
    Tuple t(k);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
        if (pos == k) {
            f(t);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            t[pos] = i;
            self(self, pos + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
}

// Chevalley–Eilenberg differential straight from the defining sum.
inline KForm differential(const LieAlgebra& g, const KForm& f)
{
    const std::size_t n = g.dim();
    const std::size_t k = f.degree();
    KForm out(n, k + 1);
    if (k + 1 > n)
        return out;
    for_each_increasing(n, k + 1, [&](const Tuple& x) {
        Scalar total = 0;
        for (std::size_t i = 0; i <= k; ++i)
            for (std::size_t j = i + 1; j <= k; ++j) {
                Vector b = lie_bracket(g, Vector::unit(n, x[i]), Vector::unit(n, x[j]));
                Tuple rest;
                for (std::size_t m = 0; m <= k; ++m)
                    if (m != i && m != j)
                        rest.push_back(x[m]);
                Scalar term = value_first(f, b, rest);
                total += ((i + j) % 2 == 0) ? term : -term;
            }
        if (!is_zero(total))
            out.add_term(x, total);
    });
    return out;
}

inline Scalar factorial(std::size_t k)
{
    Scalar r = 1;
    for (std::size_t i = 2; i <= k; ++i)
        r *= static_cast<long>(i);
    return r;
}

// (a∧b)(x_1..x_{p+q}) = 1/(p!q!) Σ_σ sgn σ a(x_σ..) b(x_σ..)
inline KForm wedge(const KForm& a, const KForm& b)
{
    const std::size_t n = a.dim();
    const std::size_t p = a.degree(), q = b.degree();
    KForm out(n, p + q);
    if (p + q > n)
        return out;
    const Scalar norm = factorial(p) * factorial(q);
    for_each_increasing(n, p + q, [&](const Tuple& x) {
        Tuple perm(p + q);
        std::iota(perm.begin(), perm.end(), 0);
        Scalar total = 0;
        do {
            Tuple left, right;
            for (std::size_t i = 0; i < p; ++i)
                left.push_back(x[perm[i]]);
            for (std::size_t i = p; i < p + q; ++i)
                right.push_back(x[perm[i]]);
            total += inversion_sign(perm) * value(a, left) * value(b, right);
        } while (std::next_permutation(perm.begin(), perm.end()));
        total /= norm;
        if (!is_zero(total))
            out.add_term(x, total);
    });
    return out;
}

inline Scalar determinant(const Matrix& m)
{
    const std::size_t n = m.rows();
    Tuple perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Scalar total = 0;
    do {
        Scalar term = inversion_sign(perm);
        for (std::size_t i = 0; i < n; ++i)
            term *= m(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// First basis triple (i<j<k) whose cyclic Jacobi sum is nonzero.
inline std::optional<Tuple> jacobi_violation(const LieAlgebra& g)
{
    const std::size_t n = g.dim();
    std::optional<Tuple> found;
    for_each_increasing(n, 3, [&](const Tuple& t) {
        if (found)
            return;
        Vector e[3] = {Vector::unit(n, t[0]), Vector::unit(n, t[1]), Vector::unit(n, t[2])};
        Vector sum = lie_bracket(g, lie_bracket(g, e[0], e[1]), e[2]) + lie_bracket(g, lie_bracket(g, e[1], e[2]), e[0]) +
                     lie_bracket(g, lie_bracket(g, e[2], e[0]), e[1]);
        if (!sum.is_zero())
            found = t;
    });
    return found;
}

inline bool leibniz_holds(const LieAlgebra& g, const Matrix& d)
{
    const std::size_t n = g.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vector ei = Vector::unit(n, i), ej = Vector::unit(n, j);
            if (d * lie_bracket(g, ei, ej) != lie_bracket(g, d * ei, ej) + lie_bracket(g, ei, d * ej))
                return false;
        }
    return true;
}

}  // namespace lieforge::testing::oracle
