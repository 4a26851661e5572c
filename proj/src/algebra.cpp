#include "lieforge/algebra.hpp"

#include <sstream>

namespace lieforge {

namespace {

void require_dim(const LieAlgebra& g, std::size_t size, const char* what)
{
    if (size != g.dim())
        throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(g.dim()) + ", got " +
                             std::to_string(size));
}

void require_map(const LieAlgebra& g, const LinearMap& m, const char* what)
{
    if (m.rows() != g.dim() || m.cols() != g.dim())
        throw DimensionError(std::string(what) + ": expected a " + std::to_string(g.dim()) + "x" +
                             std::to_string(g.dim()) + " map");
}

std::string triple(std::size_t i, std::size_t j, std::size_t k)
{
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
}

}  // namespace

std::vector<std::string> LieAlgebra::default_labels(std::size_t dim)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < dim; ++i)
        out.push_back("e" + std::to_string(i + 1));
    return out;
}

LieAlgebra::LieAlgebra(std::size_t dim, std::vector<std::string> labels)
    : dim_(dim), labels_(labels.empty() ? default_labels(dim) : std::move(labels)), table_(dim * dim, Vector(dim))
{
    if (dim == 0)
        throw DimensionError("Lie algebra dimension must be positive");
    if (labels_.size() != dim)
        throw DimensionError("expected " + std::to_string(dim) + " basis labels");
}

LieAlgebra::LieAlgebra(std::size_t dim, std::span<const Entry> brackets, std::vector<std::string> labels)
    : LieAlgebra(dim, std::move(labels))
{
    for (const auto& e : brackets) {
        if (e.i >= dim || e.j >= dim)
            throw DimensionError("bracket index out of range");
        require_dim(*this, e.value.size(), "bracket value");
        if (e.i == e.j)
            continue;
        table_[e.i * dim + e.j] = e.value;
        table_[e.j * dim + e.i] = -e.value;
    }
}

std::vector<LieAlgebra::Entry> LieAlgebra::upper_entries() const
{
    std::vector<Entry> out;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j)
            if (!basis_bracket(i, j).is_zero())
                out.push_back(Entry{i, j, basis_bracket(i, j)});
    return out;
}

bool same_structure(const LieAlgebra& a, const LieAlgebra& b)
{
    if (a.dim() != b.dim())
        return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j)
            if (a.basis_bracket(i, j) != b.basis_bracket(i, j))
                return false;
    return true;
}

std::string format_vector(const Vector& v, const std::vector<std::string>& labels)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Scalar& c = v[i];
        if (is_zero(c))
            continue;
        const Scalar mag = abs(c);
        if (first)
            os << (sgn(c) < 0 ? "-" : "");
        else
            os << (sgn(c) < 0 ? " - " : " + ");
        if (mag != 1)
            os << to_string(mag) << "*";
        os << (i < labels.size() ? labels[i] : "e" + std::to_string(i + 1));
        first = false;
    }
    return first ? "0" : os.str();
}

Vector bracket(const LieAlgebra& g, const Vector& x, const Vector& y)
{
    require_dim(g, x.size(), "bracket");
    require_dim(g, y.size(), "bracket");
    Vector out(g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i) {
        if (is_zero(x[i]))
            continue;
        for (std::size_t j = 0; j < g.dim(); ++j) {
            if (i == j || is_zero(y[j]))
                continue;
            const Scalar coeff = x[i] * y[j];
            const Vector& b = g.basis_bracket(i, j);
            for (std::size_t k = 0; k < g.dim(); ++k)
                if (!is_zero(b[k]))
                    out[k] += coeff * b[k];
        }
    }
    return out;
}

CheckReport check_jacobi(const LieAlgebra& g)
{
    CheckReport report;
    const std::size_t n = g.dim();
    bool any_failure = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const Vector ei = Vector::unit(n, i), ej = Vector::unit(n, j), ek = Vector::unit(n, k);
                const Vector cyclic = bracket(g, g.basis_bracket(i, j), ek) + bracket(g, g.basis_bracket(j, k), ei) +
                                      bracket(g, g.basis_bracket(k, i), ej);
                if (cyclic.is_zero())
                    continue;
                any_failure = true;
                Witness w{{i, j, k}, std::vector<Scalar>(cyclic.begin(), cyclic.end()),
                          "cyclic sum on " + triple(i, j, k) + " = " + format_vector(cyclic, g.labels())};
                report.fail("jacobi", std::move(w));
            }
    if (!any_failure)
        report.pass("jacobi");
    return report;
}

LinearMap adjoint(const LieAlgebra& g, const Vector& x)
{
    require_dim(g, x.size(), "adjoint");
    LinearMap ad(g.dim(), g.dim());
    for (std::size_t j = 0; j < g.dim(); ++j)
        ad.set_column(j, bracket(g, x, Vector::unit(g.dim(), j)));
    return ad;
}

Subspace center(const LieAlgebra& g)
{
    // x is central iff sum_i x_i c[i][j][k] = 0 for all j, k.
    const std::size_t n = g.dim();
    Matrix system(n * n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                system(j * n + k, i) = g.constant(i, j, k);
    return nullspace(system);
}

CheckReport is_derivation(const LieAlgebra& g, const LinearMap& d)
{
    require_map(g, d, "is_derivation");
    CheckReport report;
    const std::size_t n = g.dim();
    bool any_failure = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vector lhs = d * g.basis_bracket(i, j);
            const Vector rhs = bracket(g, d.column(i), Vector::unit(n, j)) + bracket(g, Vector::unit(n, i), d.column(j));
            if (lhs == rhs)
                continue;
            any_failure = true;
            const Vector residual = lhs - rhs;
            Witness w{{i, j}, std::vector<Scalar>(residual.begin(), residual.end()),
                      "D[" + g.label(i) + "," + g.label(j) + "] = " + format_vector(lhs, g.labels()) + " vs [D" +
                          g.label(i) + "," + g.label(j) + "] + [" + g.label(i) + ",D" + g.label(j) +
                          "] = " + format_vector(rhs, g.labels())};
            report.fail("leibniz", std::move(w));
        }
    if (!any_failure)
        report.pass("leibniz");
    return report;
}

LieAlgebra change_basis(const LieAlgebra& g, const Matrix& basis)
{
    if (basis.rows() != g.dim() || basis.cols() != g.dim())
        throw DimensionError("change_basis: basis matrix has the wrong shape");
    const auto inv = inverse(basis);
    if (!inv)
        throw std::invalid_argument("change_basis: basis vectors are linearly dependent");
    std::vector<LieAlgebra::Entry> entries;
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j)
            entries.push_back({i, j, *inv * bracket(g, basis.column(i), basis.column(j))});
    return LieAlgebra(g.dim(), entries, g.labels());
}

LinearMap unflatten_map(const Vector& flat, std::size_t n)
{
    if (flat.size() != n * n)
        throw DimensionError("unflatten_map: wrong length");
    LinearMap m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            m(r, c) = flat[r * n + c];
    return m;
}

Vector flatten_map(const LinearMap& m)
{
    Vector flat(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            flat[r * m.cols() + c] = m(r, c);
    return flat;
}

namespace {

// Unknown D(r, c) lives at r * n + c.
struct ConstraintWriter {
    const LieAlgebra& g;
    AffineSystem& system;
    std::size_t n = g.dim();

    std::size_t at(std::size_t r, std::size_t c) const { return r * n + c; }

    void operator()(const LeibnizRule&) const
    {
        // D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j] = 0, component k.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    Vector row(n * n);
                    for (std::size_t m = 0; m < n; ++m) {
                        row[at(k, m)] += g.constant(i, j, m);
                        row[at(m, i)] -= g.constant(m, j, k);
                        row[at(m, j)] -= g.constant(i, m, k);
                    }
                    if (!system.add(std::move(row), 0,
                                    "derivation: Leibniz on " + g.label(i) + "," + g.label(j) + " component " +
                                        g.label(k)))
                        return;
                }
    }

    void operator()(const FormScaling& c) const
    {
        require_dim(g, c.phi.size(), "form constraint");
        for (std::size_t col = 0; col < n; ++col) {
            Vector row(n * n);
            for (std::size_t r = 0; r < n; ++r)
                row[at(r, col)] = c.phi[r];
            if (!system.add(std::move(row), c.lambda * c.phi[col],
                            "phi∘D = " + to_string(c.lambda) + "*phi on " + g.label(col)))
                return;
        }
    }

    void operator()(const CommutesWith& c) const
    {
        require_map(g, c.map, "commutation constraint");
        const std::vector<Vector> vectors = c.on ? c.on->basis() : Subspace::whole(n).basis();
        for (std::size_t b = 0; b < vectors.size(); ++b) {
            const Vector& v = vectors[b];
            const Vector av = c.map * v;
            for (std::size_t k = 0; k < n; ++k) {
                // (D A v)_k - (A D v)_k
                Vector row(n * n);
                for (std::size_t col = 0; col < n; ++col) {
                    row[at(k, col)] += av[col];
                    for (std::size_t m = 0; m < n; ++m)
                        row[at(m, col)] -= c.map(k, m) * v[col];
                }
                if (!system.add(std::move(row), 0,
                                "D∘A = A∘D on " + format_vector(v, g.labels()) + " component " + g.label(k)))
                    return;
            }
        }
    }

    void operator()(const MapsTo& c) const
    {
        require_dim(g, c.from.size(), "value constraint");
        require_dim(g, c.to.size(), "value constraint");
        for (std::size_t k = 0; k < n; ++k) {
            Vector row(n * n);
            for (std::size_t col = 0; col < n; ++col)
                row[at(k, col)] = c.from[col];
            if (!system.add(std::move(row), c.to[k],
                            "D(" + format_vector(c.from, g.labels()) + ") = " + format_vector(c.to, g.labels()) +
                                " component " + g.label(k)))
                return;
        }
    }

    void operator()(const EntryEquals& c) const
    {
        if (c.row >= n || c.col >= n)
            throw DimensionError("entry constraint out of range");
        Vector row(n * n);
        row[at(c.row, c.col)] = 1;
        system.add(std::move(row), c.value,
                   "D(" + std::to_string(c.row + 1) + "," + std::to_string(c.col + 1) + ") = " + to_string(c.value));
    }
};

}  // namespace

DerivationSpace derivation_space(const LieAlgebra& g, std::span<const DerivationConstraint> constraints)
{
    const std::size_t n = g.dim();
    AffineSystem system(n * n);
    ConstraintWriter writer{g, system};
    for (const auto& c : constraints) {
        std::visit(writer, c);
        if (!system.consistent())
            break;
    }

    DerivationSpace out;
    if (!system.consistent()) {
        out.failing_constraint = system.failing_label();
        return out;
    }
    out.particular = unflatten_map(*system.particular(), n);
    for (const auto& v : system.homogeneous_basis())
        out.homogeneous_basis.push_back(unflatten_map(v, n));
    return out;
}

}  // namespace lieforge
