#include "lieforge/catalog.hpp"

#include <stdexcept>

namespace lieforge {

namespace {

struct Bracket {
    std::size_t i, j;  // 1-based, as written in tables
    std::vector<Scalar> value;
};

LieAlgebra table(std::size_t n, std::initializer_list<Bracket> rows)
{
    std::vector<LieAlgebra::Entry> entries;
    for (const auto& r : rows) {
        Vector v(n);
        for (std::size_t k = 0; k < r.value.size(); ++k)
            v[k] = r.value[k];
        entries.push_back({r.i - 1, r.j - 1, v});
    }
    return LieAlgebra(n, entries);
}

// Map from the images of e_1..e_n.
LinearMap images(std::initializer_list<std::vector<Scalar>> columns)
{
    std::vector<Vector> cols;
    for (const auto& c : columns)
        cols.emplace_back(c);
    return Matrix::from_columns(cols);
}

KForm one_form(std::vector<Scalar> coeffs) { return KForm::one_form(Vector(std::move(coeffs))); }

SasakianStructure sasakian(const LieAlgebra& g, Vector xi, KForm alpha, LinearMap phi)
{
    Matrix metric = sasakian_metric(g, alpha, phi);
    return SasakianStructure{std::move(xi), std::move(alpha), std::move(phi), std::move(metric)};
}

const Scalar half(1, 2);

std::vector<Builtin> make_catalog()
{
    std::vector<Builtin> out;

    {
        Builtin b{"h3", "Heisenberg algebra, [e1,e2]=e3", table(3, {{1, 2, {0, 0, 1}}}), {}, {}, {}, {}};
        const LinearMap phi = images({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}});
        b.sasakian = sasakian(b.algebra, Vector{0, 0, 1}, one_form({0, 0, 1}), phi);
        b.maps["Phi"] = phi;
        b.maps["D"] = images({{half, 0, 0}, {0, half, 0}, {0, 0, 1}});
        out.push_back(std::move(b));
    }
    {
        Builtin b{"d4half",
                  "Frobenius-Kähler algebra D_{4,1/2} = h3(D), D = diag(1/2,1/2,1)",
                  table(4, {{1, 2, {0, 0, 1}}, {4, 1, {half}}, {4, 2, {0, half}}, {4, 3, {0, 0, 1}}}),
                  {},
                  {},
                  {},
                  {}};
        const LinearMap j = images({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
        KForm omega(4, 2);
        omega.add_term({0, 1}, 1);
        omega.add_term({2, 3}, -1);
        b.frobenius = FrobeniusStructure{one_form({0, 0, 1, 0}), Vector{0, 0, 0, 1}};
        b.kahler = KahlerStructure{j, omega, kahler_metric(j, omega)};
        b.maps["J"] = j;
        b.maps["E"] = images({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
        out.push_back(std::move(b));
    }
    {
        Builtin b{"g0",
                  "5-dimensional Sasakian algebra with trivial center, D_{4,1/2}(E)",
                  table(5, {{1, 2, {0, 0, 1}},
                            {4, 1, {half}},
                            {4, 2, {0, half}},
                            {4, 3, {0, 0, 1}},
                            {5, 1, {0, -1}},
                            {5, 2, {1}}}),
                  {},
                  {},
                  {},
                  {}};
        const LinearMap phi =
            images({{0, 1, 0, 0, 0}, {-1, 0, 0, 0, 0}, {0, 0, 0, -1, 0}, {0, 0, 1, 0, -1}, {0, 0, 0, 0, 0}});
        b.sasakian = sasakian(b.algebra, Vector{0, 0, 0, 0, 1}, one_form({0, 0, 1, 0, 1}), phi);
        b.maps["Phi"] = phi;
        out.push_back(std::move(b));
    }
    {
        Builtin b{"g5",
                  "5-dimensional Sasakian algebra, central extension of D_{4,1/2}",
                  table(5, {{1, 2, {0, 0, 1, 0, 1}}, {4, 1, {half}}, {4, 2, {0, half}}, {4, 3, {0, 0, 1, 0, 1}}}),
                  {},
                  {},
                  {},
                  {}};
        const LinearMap phi =
            images({{0, 1, 0, 0, 0}, {-1, 0, 0, 0, 0}, {0, 0, 0, -1, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 0, 0}});
        b.sasakian = sasakian(b.algebra, Vector{0, 0, 0, 0, 1}, one_form({0, 0, 0, 0, 1}), phi);
        b.maps["Phi"] = phi;
        out.push_back(std::move(b));
    }
    return out;
}

const std::vector<Builtin>& catalog()
{
    static const std::vector<Builtin> entries = make_catalog();
    return entries;
}

}  // namespace

std::vector<std::string> builtin_names()
{
    std::vector<std::string> names;
    for (const auto& b : catalog())
        names.push_back(b.name);
    return names;
}

const Builtin& builtin(std::string_view name)
{
    for (const auto& b : catalog())
        if (b.name == name)
            return b;
    std::string valid;
    for (const auto& n : builtin_names())
        valid += (valid.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown builtin '" + std::string(name) + "' (valid: " + valid + ")");
}

}  // namespace lieforge
