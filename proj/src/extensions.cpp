#include "lieforge/extensions.hpp"

#include <algorithm>
#include <numeric>

namespace lieforge {

namespace {

bool has_default_labels(const LieAlgebra& g)
{
    return g.labels() == LieAlgebra::default_labels(g.dim());
}

// Parent labels plus one new label. Default-labelled parents keep counting
// (e1..en, e(n+1)); otherwise the hint is used, primed until unique.
std::vector<std::string> child_labels(const LieAlgebra& g, const std::string& hint)
{
    std::vector<std::string> labels = g.labels();
    if (has_default_labels(g)) {
        labels.push_back("e" + std::to_string(g.dim() + 1));
        return labels;
    }
    std::string name = hint;
    while (std::find(labels.begin(), labels.end(), name) != labels.end())
        name += "'";
    labels.push_back(name);
    return labels;
}

Vector extend_vector(const Vector& v, std::size_t new_dim)
{
    Vector out(new_dim);
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i];
    return out;
}

std::vector<std::size_t> identity_embedding(std::size_t n)
{
    std::vector<std::size_t> out(n);
    std::iota(out.begin(), out.end(), 0);
    return out;
}

}  // namespace

CheckReport is_cocycle(const LieAlgebra& g, const KForm& theta)
{
    if (theta.degree() != 2 || theta.dim() != g.dim())
        throw DimensionError("is_cocycle: expected a 2-form on the algebra");
    CheckReport report;
    const KForm d = ce_differential(g, theta);
    if (d.is_zero()) {
        report.pass("cocycle");
        return report;
    }
    for (const auto& [idx, value] : d.terms()) {
        report.fail("cocycle", Witness{idx, {value},
                                        "dtheta(" + g.label(idx[0]) + "," + g.label(idx[1]) + "," + g.label(idx[2]) +
                                            ") = " + to_string(value)});
    }
    return report;
}

ExtensionResult central_extension(const LieAlgebra& g, const KForm& theta, ExtensionOptions options)
{
    CheckReport pre = is_cocycle(g, theta);
    if (!options.force && !pre.passed())
        throw PreconditionError("central_extension: theta is not a 2-cocycle", std::move(pre));

    const std::size_t n = g.dim();
    std::vector<LieAlgebra::Entry> entries;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vector v = extend_vector(g.basis_bracket(i, j), n + 1);
            v[n] = theta.coefficient({i, j});
            if (!v.is_zero())
                entries.push_back({i, j, std::move(v)});
        }
    return ExtensionResult{LieAlgebra(n + 1, entries, child_labels(g, "z")), identity_embedding(n), n, std::nullopt,
                           theta, std::nullopt};
}

ExtensionResult derivation_extension(const LieAlgebra& g, const LinearMap& d, ExtensionOptions options)
{
    if (d.rows() != g.dim() || d.cols() != g.dim())
        throw DimensionError("derivation_extension: derivation has the wrong shape");
    CheckReport pre = is_derivation(g, d);
    if (!options.force && !pre.passed())
        throw PreconditionError("derivation_extension: map is not a derivation", std::move(pre));

    const std::size_t n = g.dim();
    std::vector<LieAlgebra::Entry> entries;
    for (const auto& e : g.upper_entries())
        entries.push_back({e.i, e.j, extend_vector(e.value, n + 1)});
    for (std::size_t i = 0; i < n; ++i) {
        const Vector image = d.column(i);
        if (!image.is_zero())
            entries.push_back({n, i, extend_vector(image, n + 1)});
    }
    return ExtensionResult{LieAlgebra(n + 1, entries, child_labels(g, "d")), identity_embedding(n), std::nullopt, n,
                           std::nullopt, d};
}

ExtensionResult double_extension(const LieAlgebra& g, const KForm& theta, const LinearMap& d,
                                 ExtensionOptions options)
{
    if (d.rows() != g.dim() + 1 || d.cols() != g.dim() + 1)
        throw DimensionError("double_extension: D must act on the (n+1)-dimensional central extension");
    ExtensionResult central = central_extension(g, theta, options);
    ExtensionResult full = derivation_extension(central.algebra, d, options);
    full.embedding = identity_embedding(g.dim());
    full.central = g.dim();
    full.derivation = g.dim() + 1;
    full.cocycle = theta;
    return full;
}

ExtensionResult reversed_double_extension(const LieAlgebra& g, const KForm& alpha, const LinearMap& d,
                                          ExtensionOptions options)
{
    if (alpha.degree() != 1 || alpha.dim() != g.dim())
        throw DimensionError("reversed_double_extension: expected a 1-form on the algebra");
    ExtensionResult with_d = derivation_extension(g, d, options);
    const LieAlgebra& gd = with_d.algebra;
    const KForm omega = -ce_differential(gd, extend_by_zero(alpha, gd.dim()));

    const Subspace rad = radical(gd, omega);
    if (!options.force && !rad.is_zero()) {
        CheckReport report;
        const Vector& v = rad.basis().front();
        report.fail("nondegenerate", Witness{{v.leading_index()},
                                             std::vector<Scalar>(v.begin(), v.end()),
                                             "radical of -dalpha on g(D) contains " + format_vector(v, gd.labels())});
        throw PreconditionError("reversed_double_extension: -dalpha is degenerate on g(D)", std::move(report));
    }

    ExtensionResult full = central_extension(gd, omega, options);
    full.embedding = identity_embedding(g.dim());
    full.derivation = g.dim();
    full.central = g.dim() + 1;
    full.cocycle = omega;
    full.derivation_map = d;
    return full;
}

}  // namespace lieforge
