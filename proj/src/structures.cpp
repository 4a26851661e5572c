#include "lieforge/structures.hpp"

#include <algorithm>

namespace lieforge {

namespace {

Vector pad(const Vector& v, std::size_t dim)
{
    Vector out(dim);
    for (std::size_t i = 0; i < std::min(dim, v.size()); ++i)
        out[i] = v[i];
    return out;
}

Matrix pad_map(const Matrix& m, std::size_t dim)
{
    Matrix out(dim, dim);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(r, c) = m(r, c);
    return out;
}

std::vector<Scalar> values_of(const Vector& v) { return {v.begin(), v.end()}; }

std::vector<Vector> kernel_basis(const KForm& alpha)
{
    const Vector a = alpha.covector();
    return nullspace(Matrix::from_rows({values_of(a)})).basis();
}

std::optional<std::size_t> first_nonzero_column(const Matrix& m)
{
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!m.column(c).is_zero())
            return c;
    return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> first_difference(const Matrix& a, const Matrix& b)
{
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a(r, c) != b(r, c))
                return std::make_pair(r, c);
    return std::nullopt;
}

// Adds a pass item, or a failure at the first column where lhs and rhs
// differ; the witness values are lhs - rhs on that basis vector.
void add_map_identity(CheckReport& report, const std::string& name, const Matrix& lhs, const Matrix& rhs,
                      const std::vector<std::string>& labels, const std::string& what)
{
    const Matrix diff = lhs - rhs;
    const auto col = first_nonzero_column(diff);
    if (!col) {
        report.pass(name);
        return;
    }
    const Vector residual = diff.column(*col);
    report.fail(name, Witness{{*col}, values_of(residual),
                              what + " fails on " + labels[*col] + ": residual " + format_vector(residual, labels)});
}

void add_positive_definite(CheckReport& report, const Matrix& metric)
{
    const auto order = first_nonpositive_minor(metric);
    if (!order) {
        report.pass("metric_positive");
        return;
    }
    Matrix minor(*order, *order);
    for (std::size_t r = 0; r < *order; ++r)
        for (std::size_t c = 0; c < *order; ++c)
            minor(r, c) = metric(r, c);
    const Scalar det = determinant(minor);
    report.fail("metric_positive", Witness{{*order - 1}, {det},
                                           "leading principal minor of order " + std::to_string(*order) + " is " +
                                               to_string(det)});
}

void add_symmetric(CheckReport& report, const Matrix& metric, const std::vector<std::string>& labels)
{
    const auto diff = first_difference(metric, metric.transpose());
    if (!diff) {
        report.pass("metric_symmetric");
        return;
    }
    const auto [i, j] = *diff;
    report.fail("metric_symmetric", Witness{{i, j}, {metric(i, j), metric(j, i)},
                                            "g(" + labels[i] + "," + labels[j] + ") = " + to_string(metric(i, j)) +
                                                " but g(" + labels[j] + "," + labels[i] + ") = " +
                                                to_string(metric(j, i))});
}

// The base algebra of an extension: brackets of the first n elements with
// their components on the first n coordinates.
LieAlgebra truncated(const LieAlgebra& big, std::size_t n)
{
    std::vector<LieAlgebra::Entry> entries;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vector v(n);
            for (std::size_t k = 0; k < n; ++k)
                v[k] = big.constant(i, j, k);
            if (!v.is_zero())
                entries.push_back({i, j, std::move(v)});
        }
    return LieAlgebra(n, entries, std::vector<std::string>(big.labels().begin(), big.labels().begin() + n));
}

void require(const CheckReport& pre, const std::string& what)
{
    if (!pre.passed())
        throw PreconditionError(what, pre);
}

}  // namespace

NijenhuisTable::NijenhuisTable(std::size_t dim) : dim_(dim), values_(dim * dim, Vector(dim)) {}

void NijenhuisTable::set(std::size_t i, std::size_t j, const Vector& v)
{
    values_[i * dim_ + j] = v;
    values_[j * dim_ + i] = -v;
}

bool NijenhuisTable::is_zero() const
{
    return std::all_of(values_.begin(), values_.end(), [](const Vector& v) { return v.is_zero(); });
}

KForm kirillov_form(const LieAlgebra& g, const KForm& phi)
{
    if (phi.degree() != 1 || phi.dim() != g.dim())
        throw DimensionError("kirillov_form: expected a 1-form on the algebra");
    const Vector p = phi.covector();
    KForm out(g.dim(), 2);
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j)
            out.add_term({i, j}, dot(p, g.basis_bracket(i, j)));
    return out;
}

Checked<FrobeniusStructure> check_frobenius(const LieAlgebra& g, const KForm& phi)
{
    Checked<FrobeniusStructure> out;
    const std::size_t n = g.dim();
    out.report.add("even_dimension", n % 2 == 0,
                   Witness{{}, {Scalar(static_cast<unsigned long>(n))}, "dimension " + std::to_string(n) + " is odd"});
    const Subspace rad = radical(g, kirillov_form(g, phi));
    if (rad.is_zero()) {
        out.report.pass("nondegenerate");
    } else {
        const Vector& v = rad.basis().front();
        out.report.fail("nondegenerate", Witness{{v.leading_index()}, values_of(v),
                                                 "B_phi(" + format_vector(v, g.labels()) + ", .) = 0"});
    }
    if (!out.report.passed())
        return out;

    const Vector xp = principal_element(g, phi);
    out.report.note("principal", format_vector(xp, g.labels()));
    out.structure = FrobeniusStructure{phi, xp};
    return out;
}

Vector principal_element(const LieAlgebra& g, const KForm& phi)
{
    const std::size_t n = g.dim();
    CheckReport pre;
    const Subspace rad = radical(g, kirillov_form(g, phi));
    pre.add("frobenius", n % 2 == 0 && rad.is_zero(),
            Witness{{}, {}, n % 2 ? "dimension is odd" : "B_phi is degenerate"});
    require(pre, "principal_element: (g, phi) is not Frobenius");

    // phi([x, e_j]) = phi(e_j): row j has B(e_i, e_j) in column i.
    const Matrix system = kirillov_form(g, phi).gram().transpose();
    const auto x = solve(system, phi.covector());
    if (!x || rank(system) != n) {
        CheckReport r;
        r.fail("unique", Witness{{}, {}, "phi∘ad(x) = phi has no unique solution"});
        throw PreconditionError("principal_element: no unique solution", r);
    }
    return *x;
}

Checked<ContactStructure> check_contact(const LieAlgebra& g, const KForm& alpha)
{
    Checked<ContactStructure> out;
    CheckReport& report = out.report;
    const std::size_t n = g.dim();
    report.add("odd_dimension", n % 2 == 1,
               Witness{{}, {Scalar(static_cast<unsigned long>(n))}, "dimension " + std::to_string(n) + " is even"});
    if (n % 2 == 0)
        return out;

    const TopContactResult top = top_contact_test(g, alpha);
    report.add("top_power", top.verdict, Witness{{}, {top.coefficient}, top.reason});

    // dalpha(xi, e_j) = 0 for all j, alpha(xi) = 1.
    const Matrix dgram = ce_differential(g, alpha).gram();
    Matrix system(n + 1, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            system(j, i) = dgram(i, j);
    const Vector a = alpha.covector();
    for (std::size_t i = 0; i < n; ++i)
        system(n, i) = a[i];
    const auto xi = solve(system, Vector::unit(n + 1, n));
    if (!xi) {
        report.fail("reeb", Witness{{}, {}, "no xi with alpha(xi) = 1 in the radical of dalpha"});
        return out;
    }
    if (rank(system) != n) {
        report.fail("reeb", Witness{{xi->leading_index()}, values_of(*xi),
                                    "Reeb equations have a positive-dimensional solution set"});
        return out;
    }
    report.pass("reeb");
    report.note("reeb", format_vector(*xi, g.labels()));

    const Subspace rad = radical(g, kirillov_form(g, alpha));
    const Vector line[] = {*xi};
    if (rad == Subspace::span(n, line)) {
        report.pass("radical_is_reeb_line");
    } else {
        report.fail("radical_is_reeb_line",
                    Witness{{}, {Scalar(static_cast<unsigned long>(rad.dim()))},
                            "radical of B_alpha has dimension " + std::to_string(rad.dim())});
    }
    if (report.passed())
        out.structure = ContactStructure{alpha, *xi};
    return out;
}

NijenhuisTable nijenhuis(const LieAlgebra& g, const LinearMap& a)
{
    const std::size_t n = g.dim();
    if (a.rows() != n || a.cols() != n)
        throw DimensionError("nijenhuis: map has the wrong shape");
    NijenhuisTable out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vector x = Vector::unit(n, i), y = Vector::unit(n, j);
            const Vector ax = a.column(i), ay = a.column(j);
            Vector v = a * (a * g.basis_bracket(i, j));
            v += bracket(g, ax, ay);
            v -= a * bracket(g, x, ay);
            v -= a * bracket(g, ax, y);
            out.set(i, j, v);
        }
    return out;
}

NijenhuisTable nijenhuis_complex(const LieAlgebra& g, const LinearMap& j_map)
{
    const std::size_t n = g.dim();
    if (j_map.rows() != n || j_map.cols() != n)
        throw DimensionError("nijenhuis_complex: map has the wrong shape");
    NijenhuisTable out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vector x = Vector::unit(n, i), y = Vector::unit(n, j);
            const Vector jx = j_map.column(i), jy = j_map.column(j);
            Vector v = -g.basis_bracket(i, j);
            v += bracket(g, jx, jy);
            v -= j_map * bracket(g, x, jy);
            v -= j_map * bracket(g, jx, y);
            out.set(i, j, v);
        }
    return out;
}

Matrix kahler_metric(const LinearMap& j, const KForm& omega)
{
    // g(e_i, e_j) = omega(e_i, J e_j) = sum_k J(k, j) omega(e_i, e_k)
    return omega.gram() * j;
}

Matrix sasakian_metric(const LieAlgebra& g, const KForm& alpha, const LinearMap& phi)
{
    const Vector a = alpha.covector();
    return outer(a, a) - ce_differential(g, alpha).gram() * phi;
}

Checked<KahlerStructure> check_kahler(const LieAlgebra& g, const LinearMap& j, const KForm& omega)
{
    const std::size_t n = g.dim();
    if (j.rows() != n || j.cols() != n || omega.degree() != 2 || omega.dim() != n)
        throw DimensionError("check_kahler: J or omega does not match the algebra");
    Checked<KahlerStructure> out;
    CheckReport& report = out.report;
    const auto& labels = g.labels();

    add_map_identity(report, "J_squared", j * j, -Matrix::identity(n), labels, "J∘J = -Id");

    const NijenhuisTable nj = nijenhuis(g, j);
    bool integrable = true;
    for (std::size_t a = 0; a < n && integrable; ++a)
        for (std::size_t b = a + 1; b < n && integrable; ++b)
            if (!nj(a, b).is_zero()) {
                integrable = false;
                report.fail("integrable", Witness{{a, b}, values_of(nj(a, b)),
                                                  "N_J(" + labels[a] + "," + labels[b] +
                                                      ") = " + format_vector(nj(a, b), labels)});
            }
    if (integrable)
        report.pass("integrable");

    const KForm d_omega = ce_differential(g, omega);
    if (d_omega.is_zero()) {
        report.pass("closed");
    } else {
        const auto& [idx, value] = *d_omega.terms().begin();
        report.fail("closed", Witness{idx, {value},
                                      "domega(" + labels[idx[0]] + "," + labels[idx[1]] + "," + labels[idx[2]] +
                                          ") = " + to_string(value)});
    }

    const Matrix w = omega.gram();
    const auto diff = first_difference(j.transpose() * w * j, w);
    if (!diff) {
        report.pass("J_invariant");
    } else {
        const auto [a, b] = *diff;
        const Scalar lhs = (j.transpose() * w * j)(a, b);
        report.fail("J_invariant", Witness{{a, b}, {lhs, w(a, b)},
                                           "omega(J" + labels[a] + ",J" + labels[b] + ") = " + to_string(lhs) +
                                               " but omega(" + labels[a] + "," + labels[b] + ") = " +
                                               to_string(w(a, b))});
    }

    const Matrix metric = kahler_metric(j, omega);
    add_symmetric(report, metric, labels);
    add_positive_definite(report, metric);
    report.note("metric", matrix_text(metric));

    if (report.passed())
        out.structure = KahlerStructure{j, omega, metric};
    return out;
}

Checked<SasakianStructure> check_sasakian(const LieAlgebra& g, const Vector& xi, const KForm& alpha,
                                          const LinearMap& phi)
{
    const std::size_t n = g.dim();
    if (xi.size() != n || alpha.degree() != 1 || alpha.dim() != n || phi.rows() != n || phi.cols() != n)
        throw DimensionError("check_sasakian: xi, alpha or Phi does not match the algebra");
    Checked<SasakianStructure> out;
    CheckReport& report = out.report;
    const auto& labels = g.labels();
    const Vector a = alpha.covector();

    const Scalar ax = dot(a, xi);
    report.add("alpha_xi", ax == 1, Witness{{}, {ax}, "alpha(xi) = " + to_string(ax)});

    add_map_identity(report, "phi_squared", phi * phi, outer(xi, a) - Matrix::identity(n), labels,
                     "Phi∘Phi = -Id + alpha⊗xi");

    const NijenhuisTable np = nijenhuis(g, phi);
    const Matrix dgram = ce_differential(g, alpha).gram();
    bool normal = true;
    for (std::size_t i = 0; i < n && normal; ++i)
        for (std::size_t j = i + 1; j < n && normal; ++j) {
            const Vector residual = np(i, j) + dgram(i, j) * xi;
            if (!residual.is_zero()) {
                normal = false;
                report.fail("normal", Witness{{i, j}, values_of(residual),
                                              "N_Phi(" + labels[i] + "," + labels[j] + ") + dalpha(" + labels[i] +
                                                  "," + labels[j] + ")xi = " + format_vector(residual, labels)});
            }
        }
    if (normal)
        report.pass("normal");

    const Matrix metric = sasakian_metric(g, alpha, phi);
    add_symmetric(report, metric, labels);
    add_positive_definite(report, metric);

    const auto compat = first_difference(phi.transpose() * metric * phi, metric - outer(a, a));
    if (!compat) {
        report.pass("metric_phi_compatible");
    } else {
        const auto [i, j] = *compat;
        const Scalar lhs = (phi.transpose() * metric * phi)(i, j);
        const Scalar rhs = metric(i, j) - a[i] * a[j];
        report.fail("metric_phi_compatible",
                    Witness{{i, j}, {lhs, rhs},
                            "g(Phi" + labels[i] + ",Phi" + labels[j] + ") = " + to_string(lhs) +
                                " but g - alpha⊗alpha = " + to_string(rhs)});
    }

    const auto dal = first_difference(metric * phi, dgram);
    if (!dal) {
        report.pass("metric_dalpha");
    } else {
        const auto [i, j] = *dal;
        const Scalar lhs = (metric * phi)(i, j);
        report.fail("metric_dalpha", Witness{{i, j}, {lhs, dgram(i, j)},
                                             "g(" + labels[i] + ",Phi" + labels[j] + ") = " + to_string(lhs) +
                                                 " but dalpha = " + to_string(dgram(i, j))});
    }

    const Vector phi_xi = phi * xi;
    report.add("phi_xi_zero", phi_xi.is_zero(),
               Witness{{}, values_of(phi_xi), "Phi(xi) = " + format_vector(phi_xi, labels)});
    const Vector alpha_phi = phi.transpose() * a;
    report.add("alpha_phi_zero", alpha_phi.is_zero(),
               Witness{{alpha_phi.is_zero() ? 0 : alpha_phi.leading_index()}, values_of(alpha_phi),
                       "alpha∘Phi is nonzero"});

    report.note("metric", matrix_text(metric));
    if (report.passed())
        out.structure = SasakianStructure{xi, alpha, phi, metric};
    return out;
}

SasakianReduction sasakian_reduction(const LieAlgebra& g, const SasakianStructure& s)
{
    const std::size_t n = g.dim();
    CheckReport pre;
    pre.merge(check_sasakian(g, s.xi, s.alpha, s.phi).report, "sasakian.");
    const Subspace z = center(g);
    const Vector line[] = {s.xi};
    if (z == Subspace::span(n, line)) {
        pre.pass("center_is_reeb_line");
    } else {
        std::string detail = z.dim() == 0 ? "center is trivial"
                                          : "center has dimension " + std::to_string(z.dim());
        if (z.dim() >= 1 && !z.contains(s.xi))
            detail += " and does not contain xi";
        pre.fail("center_is_reeb_line", Witness{{}, {Scalar(static_cast<unsigned long>(z.dim()))}, detail});
    }
    require(pre, "sasakian_reduction: needs a Sasakian structure whose Reeb vector spans the center");

    const std::vector<Vector> kernel = kernel_basis(s.alpha);
    std::vector<Vector> columns = kernel;
    columns.push_back(s.xi);
    const Matrix basis = Matrix::from_columns(columns);
    const LieAlgebra rebased = change_basis(g, basis);
    const Matrix inv = *inverse(basis);
    const std::size_t m = n - 1;

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) {
        const Vector& v = kernel[i];
        const bool unit = v == Vector::unit(n, v.leading_index());
        labels.push_back(unit ? g.label(v.leading_index()) : "h" + std::to_string(i + 1));
    }

    std::vector<LieAlgebra::Entry> entries;
    KForm omega(m, 2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const Vector& br = rebased.basis_bracket(i, j);
            const Vector part = pad(br, m);
            if (!part.is_zero())
                entries.push_back({i, j, part});
            omega.add_term({i, j}, br[m]);  // alpha([x,y]) = -dalpha(x,y)
        }
    LieAlgebra h(m, entries, labels);

    Matrix j(m, m);
    for (std::size_t i = 0; i < m; ++i)
        j.set_column(i, pad(inv * (s.phi * kernel[i]), m));

    Checked<KahlerStructure> checked = check_kahler(h, j, omega);
    return SasakianReduction{std::move(h), basis, j, omega, std::move(checked.report), std::move(checked.structure)};
}

SasakianConstruction kahler_to_sasakian_central(const LieAlgebra& g, const KahlerStructure& k)
{
    require(check_kahler(g, k.J, k.omega).report, "kahler_to_sasakian_central: input is not Kähler");
    ExtensionResult ext = central_extension(g, k.omega);
    const std::size_t n = g.dim() + 1;
    const Vector xi = Vector::unit(n, n - 1);
    const KForm alpha = KForm::one_form(xi);
    const LinearMap phi = pad_map(k.J, n);
    Checked<SasakianStructure> checked = check_sasakian(ext.algebra, xi, alpha, phi);
    return SasakianConstruction{std::move(ext), xi, alpha, phi, std::move(checked.report),
                                std::move(checked.structure)};
}

KahlerObstruction kahler_extension_obstruction(const LieAlgebra& g, const SasakianStructure& s, const KForm& theta)
{
    const std::size_t n = g.dim();
    require(is_cocycle(g, theta), "kahler_extension_obstruction: theta is not a 2-cocycle");
    const ExtensionResult ext = central_extension(g, theta);
    const LieAlgebra& big = ext.algebra;
    const auto& labels = g.labels();
    const Vector a = s.alpha.covector();

    KahlerObstruction out;
    CheckReport& c = out.constraints;
    const std::vector<Vector> kernel = kernel_basis(s.alpha);

    auto pair_constraint = [&](const std::string& name, auto lhs_terms, const std::string& shape) {
        for (std::size_t p = 0; p < kernel.size(); ++p)
            for (std::size_t q = p + 1; q < kernel.size(); ++q) {
                const auto [t1, t2] = lhs_terms(kernel[p], kernel[q]);
                const Scalar sum = t1 + t2;
                if (is_zero(sum))
                    continue;
                const Vector& x = kernel[p];
                const Vector& y = kernel[q];
                c.fail(name, Witness{{x.leading_index(), y.leading_index()}, {t1, t2, sum},
                                     shape + " at (" + format_vector(x, labels) + "," + format_vector(y, labels) +
                                         "): " + to_string(t1) + " + " + to_string(t2) + " = " + to_string(sum)});
                return;
            }
        c.pass(name);
    };
    pair_constraint(
        "theta_phi_phi",
        [&](const Vector& x, const Vector& y) {
            return std::pair{theta(x, y), theta(s.phi * x, s.phi * y)};
        },
        "theta(x,y) + theta(Phi x,Phi y)");
    pair_constraint(
        "theta_phi_mixed",
        [&](const Vector& x, const Vector& y) {
            return std::pair{theta(s.phi * x, y), theta(x, s.phi * y)};
        },
        "theta(Phi x,y) + theta(x,Phi y)");

    bool xi_ok = true;
    for (const Vector& x : kernel) {
        const Scalar v = theta(x, s.xi);
        if (!is_zero(v)) {
            c.fail("theta_xi", Witness{{x.leading_index()}, {v},
                                       "theta(" + format_vector(x, labels) + ",xi) = " + to_string(v)});
            xi_ok = false;
            break;
        }
    }
    if (xi_ok)
        c.pass("theta_xi");

    // J = Phi on Ker(alpha), J(xi) = z, J(z) = -xi.
    Matrix j(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        Vector col = pad(s.phi.column(i), n + 1);
        col[n] += a[i];
        j.set_column(i, col);
    }
    j.set_column(n, -pad(s.xi, n + 1));

    const NijenhuisTable nj = nijenhuis(big, j);
    out.integrable = nj.is_zero();
    if (out.integrable) {
        c.pass("integrable");
    } else {
        for (std::size_t p = 0; p < n + 1; ++p)
            for (std::size_t q = p + 1; q < n + 1; ++q)
                if (!nj(p, q).is_zero() && out.constraints.find("integrable") == nullptr)
                    c.fail("integrable", Witness{{p, q}, values_of(nj(p, q)),
                                                 "N_J(" + big.label(p) + "," + big.label(q) +
                                                     ") = " + format_vector(nj(p, q), big.labels())});
    }

    const KForm dxi = ce_differential(big, extend_by_zero(s.alpha, n + 1));
    out.closed = dxi.is_zero();
    if (out.closed) {
        c.pass("closed");
    } else {
        const auto& [idx, value] = *dxi.terms().begin();
        c.fail("closed", Witness{idx, {value},
                                 "dxi*(" + big.label(idx[0]) + "," + big.label(idx[1]) + ") = " + to_string(value)});
    }

    const bool confirmed = !out.integrable || !out.closed;
    out.report.add("no_go_confirmed", confirmed,
                   Witness{{}, {}, "the complex structure is integrable and dxi* = 0 for this theta"});
    for (const CheckItem& item : c.items())
        out.report.note(item.name, item.passed() ? "holds" : "fails: " + item.witness.detail);
    return out;
}

CheckReport extend_complex_structure(const ExtensionResult& ext, const LinearMap& j, const LinearMap& d)
{
    if (!ext.central || !ext.derivation || !ext.cocycle)
        throw std::invalid_argument("extend_complex_structure: expects the result of double_extension");
    const std::size_t n = ext.embedding.size();
    const std::size_t z = *ext.central;
    const std::size_t slot = *ext.derivation;
    if (z != n || slot != n + 1)
        throw std::invalid_argument("extend_complex_structure: expects the double_extension basis order");
    if (j.rows() != n || j.cols() != n || d.rows() != n + 1 || d.cols() != n + 1)
        throw DimensionError("extend_complex_structure: J or D has the wrong shape");

    const LieAlgebra& big = ext.algebra;
    const LieAlgebra base = truncated(big, n);
    CheckReport pre;
    add_map_identity(pre, "base_J_squared", j * j, -Matrix::identity(n), base.labels(), "J∘J = -Id");
    pre.add("base_integrable", nijenhuis(base, j).is_zero(), Witness{{}, {}, "N_J is nonzero on the base"});
    pre.add("cocycle_nondegenerate", radical(base, *ext.cocycle).is_zero(),
            Witness{{}, {}, "the extension cocycle is degenerate"});
    if (ext.derivation_map)
        pre.add("derivation_matches", *ext.derivation_map == d,
                Witness{{}, {}, "D differs from the derivation used to build the extension"});
    require(pre, "extend_complex_structure: base structure fails");

    const std::size_t dim = n + 2;
    Matrix jbar(dim, dim);
    for (std::size_t i = 0; i < n; ++i)
        jbar.set_column(i, pad(j.column(i), dim));
    jbar.set_column(z, Vector::unit(dim, slot));
    jbar.set_column(slot, -Vector::unit(dim, z));

    CheckReport report;
    const NijenhuisTable nj = nijenhuis(big, jbar);
    const bool integrable = nj.is_zero();
    if (integrable) {
        report.pass("integrable");
    } else {
        bool done = false;
        for (std::size_t p = 0; p < dim && !done; ++p)
            for (std::size_t q = p + 1; q < dim && !done; ++q)
                if (!nj(p, q).is_zero()) {
                    report.fail("integrable", Witness{{p, q}, values_of(nj(p, q)),
                                                      "N_Jbar(" + big.label(p) + "," + big.label(q) +
                                                          ") = " + format_vector(nj(p, q), big.labels())});
                    done = true;
                }
    }

    bool commutes = true;
    for (std::size_t i = 0; i < n && commutes; ++i) {
        const Vector lhs = jbar * pad(d * Vector::unit(n + 1, i), dim);
        const Vector rhs = pad(d * pad(j.column(i), n + 1), dim);
        if (lhs != rhs) {
            commutes = false;
            report.fail("commutes", Witness{{i}, values_of(lhs - rhs),
                                            "Jbar(D " + big.label(i) + ") = " + format_vector(lhs, big.labels()) +
                                                " but D(J " + big.label(i) + ") = " +
                                                format_vector(rhs, big.labels())});
        }
    }
    if (commutes)
        report.pass("commutes");

    report.add("sides_agree", integrable == commutes,
               Witness{{}, {}, std::string("N_Jbar = 0 is ") + (integrable ? "true" : "false") +
                                   " but the commutation is " + (commutes ? "true" : "false")});
    return report;
}

namespace {

struct DoubleSetup {
    ExtensionResult ext;
    KForm alpha;  // alpha_bar + z*
    Vector reeb;
    CheckReport contact;
};

DoubleSetup prepare_double(const LieAlgebra& g, const SasakianStructure& s, const KForm& theta,
                           const LinearMap& d)
{
    const std::size_t n = g.dim();
    if (d.rows() != n + 1 || d.cols() != n + 1)
        throw DimensionError("double extension: D must act on the (n+1)-dimensional central extension");

    CheckReport pre;
    pre.merge(check_sasakian(g, s.xi, s.alpha, s.phi).report, "base.");
    require(pre, "double extension: base structure is not Sasakian");
    require(is_cocycle(g, theta), "double extension: theta is not a 2-cocycle");
    const ExtensionResult central = central_extension(g, theta);
    require(is_derivation(central.algebra, d), "double extension: D is not a derivation of g_theta");

    DoubleSetup out{double_extension(g, theta, d), KForm(n + 2, 1), Vector(), CheckReport()};
    Vector a = pad(s.alpha.covector(), n + 2);
    a[n] = 1;
    out.alpha = KForm::one_form(a);

    const Scalar adz = dot(pad(a, n + 1), d.column(n));
    CheckReport contact_pre;
    contact_pre.add("alpha_Dz", !is_zero(adz), Witness{{n}, {adz}, "alpha(D(z)) = 0"});
    require(contact_pre, "double extension: contact precondition alpha(D(z)) != 0 fails");

    Checked<ContactStructure> contact = check_contact(out.ext.algebra, out.alpha);
    out.contact = contact.report;
    require(out.contact, "double extension: alpha is not a contact form");
    out.reeb = contact.structure->reeb;

    CheckReport slot;
    slot.add("reeb_in_central_extension", is_zero(out.reeb[n + 1]),
             Witness{{n + 1}, values_of(out.reeb),
                     "Reeb vector " + format_vector(out.reeb, out.ext.algebra.labels()) +
                         " has a component along the adjoined derivation"});
    require(slot, "double extension: Reeb vector leaves the central extension");
    return out;
}

void validate_params(const DoubleSetup& setup, const SasakianStructure& s, const DoubleExtensionParams& p,
                     std::size_t n)
{
    CheckReport pre;
    pre.add("a_plus_b", p.a + p.b == 1, Witness{{}, {p.a + p.b}, "a + b = " + to_string(p.a + p.b)});
    pre.add("c_plus_d", p.c + p.d == 0, Witness{{}, {p.c + p.d}, "c + d = " + to_string(p.c + p.d)});
    pre.add("delta_nonzero", !is_zero(p.delta()), Witness{{}, {p.delta()}, "delta = ad - bc = 0"});
    if (p.u.size() != n)
        throw DimensionError("double extension: u has the wrong dimension");
    const Scalar au = s.alpha(p.u);
    pre.add("u_in_kernel", is_zero(au), Witness{{}, {au}, "alpha_bar(u) = " + to_string(au)});
    require(pre, "double extension: inconsistent parameters");

    Vector expected = pad(p.u + p.a * s.xi, n + 2);
    expected[n] = p.b;
    CheckReport match;
    match.add("reeb_match", expected == setup.reeb,
              Witness{{}, values_of(setup.reeb),
                      "solved Reeb vector is " + format_vector(setup.reeb, setup.ext.algebra.labels()) +
                          ", parameters give " + format_vector(expected, setup.ext.algebra.labels())});
    require(match, "double extension: parameters do not reproduce the Reeb vector");
}

// Phi on g(theta, D) from the recipe: Phi = Phi_bar on Ker(alpha_bar),
// Phi(w) = D, Phi(D) = -w, Phi(xi) = 0 with w = c xi_bar + d z.
Matrix recipe_phi(const SasakianStructure& s, const DoubleExtensionParams& p, std::size_t n)
{
    const std::size_t dim = n + 2;
    const Vector slot = Vector::unit(dim, n + 1);
    const Vector phi_u = pad(s.phi * p.u, dim);
    const Scalar inv = 1 / p.delta();
    const Vector phi_xibar = -inv * (p.b * slot + p.d * phi_u);
    const Vector phi_z = inv * (p.a * slot + p.c * phi_u);
    const Vector a = s.alpha.covector();

    Matrix phi(dim, dim);
    for (std::size_t i = 0; i < n; ++i)
        phi.set_column(i, pad(s.phi.column(i), dim) + a[i] * phi_xibar);
    phi.set_column(n, phi_z);
    Vector w = pad(p.c * s.xi, dim);
    w[n] = p.d;
    phi.set_column(n + 1, -w);
    return phi;
}

}  // namespace

DoubleExtensionParams solve_double_extension_params(const LieAlgebra& g, const SasakianStructure& s,
                                                    const KForm& theta, const LinearMap& d, const Scalar& c)
{
    const DoubleSetup setup = prepare_double(g, s, theta, d);
    const std::size_t n = g.dim();
    const Vector base = pad(setup.reeb, n);
    DoubleExtensionParams p;
    p.a = s.alpha(base);
    p.b = setup.reeb[n];
    p.c = c;
    p.d = -c;
    p.u = base - p.a * s.xi;
    return p;
}

SasakianConstruction sasakian_double_extension(const LieAlgebra& g, const SasakianStructure& s, const KForm& theta,
                                               const LinearMap& d, const DoubleExtensionParams& p)
{
    DoubleSetup setup = prepare_double(g, s, theta, d);
    validate_params(setup, s, p, g.dim());
    const Matrix phi = recipe_phi(s, p, g.dim());

    CheckReport report;
    report.merge(setup.contact, "contact.");
    Checked<SasakianStructure> checked = check_sasakian(setup.ext.algebra, setup.reeb, setup.alpha, phi);
    report.merge(checked.report);
    return SasakianConstruction{std::move(setup.ext), setup.reeb, setup.alpha, phi, std::move(report),
                                std::move(checked.structure)};
}

CheckReport double_extension_conditions(const LieAlgebra& g, const SasakianStructure& s, const KForm& theta,
                                        const LinearMap& d, const DoubleExtensionParams& p)
{
    const std::size_t n = g.dim();
    const DoubleSetup setup = prepare_double(g, s, theta, d);
    validate_params(setup, s, p, n);
    const Matrix phi = recipe_phi(s, p, n);
    const LieAlgebra& big = setup.ext.algebra;
    const auto& labels = g.labels();
    const std::vector<Vector> kernel = kernel_basis(s.alpha);
    CheckReport report;

    // (1) theta(Phi x, y) + theta(x, Phi y) = 0 on Ker(alpha_bar)
    {
        bool ok = true;
        for (std::size_t i = 0; i < kernel.size() && ok; ++i)
            for (std::size_t j = i + 1; j < kernel.size() && ok; ++j) {
                const Vector& x = kernel[i];
                const Vector& y = kernel[j];
                const Scalar t1 = theta(s.phi * x, y), t2 = theta(x, s.phi * y);
                if (!is_zero(t1 + t2)) {
                    ok = false;
                    report.fail("theta_phi_invariant",
                                Witness{{x.leading_index(), y.leading_index()}, {t1, t2},
                                        "theta(Phi x,y) + theta(x,Phi y) = " + to_string(t1 + t2) + " at (" +
                                            format_vector(x, labels) + "," + format_vector(y, labels) + ")"});
                }
            }
        if (ok)
            report.pass("theta_phi_invariant");
    }

    // (2) u and xi_bar in Rad(theta)
    {
        const Subspace rad = radical(g, theta);
        const bool u_in = rad.contains(p.u), xi_in = rad.contains(s.xi);
        const Vector& bad = u_in ? s.xi : p.u;
        report.add("radical", u_in && xi_in,
                   Witness{{}, values_of(theta.gram().transpose() * bad),
                           std::string(u_in ? "xi_bar" : "u") + " = " + format_vector(bad, labels) +
                               " is not in Rad(theta)"});
    }

    // (3) D(Phi_bar x) = Phi(D x) on Ker(alpha_bar)
    {
        bool ok = true;
        for (const Vector& x : kernel) {
            const Vector lhs = pad(d * pad(s.phi * x, n + 1), n + 2);
            const Vector rhs = phi * pad(d * pad(x, n + 1), n + 2);
            if (lhs != rhs) {
                report.fail("d_commutes_phi", Witness{{x.leading_index()}, values_of(lhs - rhs),
                                                      "D(Phi x) = " + format_vector(lhs, big.labels()) +
                                                          " but Phi(D x) = " + format_vector(rhs, big.labels()) +
                                                          " at x = " + format_vector(x, labels)});
                ok = false;
                break;
            }
        }
        if (ok)
            report.pass("d_commutes_phi");
    }

    // (4) ad(u) = -Phi_bar ad(u) Phi_bar on Ker(alpha_bar)
    {
        const LinearMap ad_u = adjoint(g, p.u);
        bool ok = true;
        for (const Vector& x : kernel) {
            const Vector residual = ad_u * x + s.phi * (ad_u * (s.phi * x));
            if (!residual.is_zero()) {
                report.fail("u_anti_invariant", Witness{{x.leading_index()}, values_of(residual),
                                                        "ad(u)x + Phi ad(u) Phi x = " +
                                                            format_vector(residual, labels) +
                                                            " at x = " + format_vector(x, labels)});
                ok = false;
                break;
            }
        }
        if (ok)
            report.pass("u_anti_invariant");
    }

    // (5) c[xi_bar, u] + Phi(D xi) = 0 and -D(xi) + c Phi([xi_bar, u]) = 0
    {
        const Vector br = pad(bracket(g, s.xi, p.u), n + 2);
        const Vector d_xi = pad(d * pad(setup.reeb, n + 1), n + 2);
        const Vector r1 = p.c * br + phi * d_xi;
        const Vector r2 = p.c * (phi * br) - d_xi;
        report.add("reeb_balance.w", r1.is_zero(),
                   Witness{{}, values_of(r1), "c[xi_bar,u] + Phi(D xi) = " + format_vector(r1, big.labels())});
        report.add("reeb_balance.d", r2.is_zero(),
                   Witness{{}, values_of(r2), "-D(xi) + c Phi([xi_bar,u]) = " + format_vector(r2, big.labels())});
    }
    return report;
}

SasakianConstruction fk_to_sasakian(const LieAlgebra& g, const FrobeniusStructure& f, const KahlerStructure& k,
                                    const LinearMap& d)
{
    const std::size_t n = g.dim();
    if (d.rows() != n || d.cols() != n)
        throw DimensionError("fk_to_sasakian: D has the wrong shape");
    CheckReport pre;
    pre.merge(check_frobenius(g, f.phi).report, "frobenius.");
    pre.merge(check_kahler(g, k.J, k.omega).report, "kahler.");
    {
        const Matrix lhs = k.omega.gram(), rhs = -ce_differential(g, f.phi).gram();
        const auto diff = first_difference(lhs, rhs);
        pre.add("exact", !diff,
                Witness{diff ? std::vector<std::size_t>{diff->first, diff->second} : std::vector<std::size_t>{},
                        {},
                        "omega differs from -dphi" +
                            (diff ? " at (" + g.label(diff->first) + "," + g.label(diff->second) + ")"
                                  : std::string())});
    }
    pre.merge(is_derivation(g, d), "derivation.");
    const Vector phi_d = d.transpose() * f.phi.covector();
    pre.add("phi_D_zero", phi_d.is_zero(),
            Witness{{phi_d.is_zero() ? 0 : phi_d.leading_index()}, values_of(phi_d), "phi∘D is nonzero"});
    add_map_identity(pre, "DJ_JD", d * k.J, k.J * d, g.labels(), "D∘J = J∘D");
    require(pre, "fk_to_sasakian: preconditions fail");

    ExtensionResult ext = derivation_extension(g, d);
    const std::size_t dim = n + 1;
    const Vector xi = Vector::unit(dim, n);
    Vector a = pad(f.phi.covector(), dim);
    a[n] = 1;
    const KForm alpha = KForm::one_form(a);

    // Phi(x) = J(x) - phi(Jx) xi, so that Phi maps g into Ker(alpha).
    Matrix phi(dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
        const Vector jx = k.J.column(i);
        phi.set_column(i, pad(jx, dim) - f.phi(jx) * xi);
    }

    Checked<SasakianStructure> checked = check_sasakian(ext.algebra, xi, alpha, phi);
    return SasakianConstruction{std::move(ext), xi, alpha, phi, std::move(checked.report),
                                std::move(checked.structure)};
}

FrobeniusKahlerConstruction sasakian_to_fk(const LieAlgebra& g, const SasakianStructure& s, const LinearMap& d)
{
    const std::size_t n = g.dim();
    if (d.rows() != n || d.cols() != n)
        throw DimensionError("sasakian_to_fk: D has the wrong shape");
    CheckReport pre;
    pre.merge(check_sasakian(g, s.xi, s.alpha, s.phi).report, "sasakian.");
    pre.merge(is_derivation(g, d), "derivation.");
    const Vector a = s.alpha.covector();
    const Vector residual = d.transpose() * a - a;
    pre.add("alpha_D", residual.is_zero(),
            Witness{{residual.is_zero() ? 0 : residual.leading_index()}, values_of(residual),
                    "alpha∘D - alpha is nonzero"});
    bool commutes = true;
    for (const Vector& x : kernel_basis(s.alpha)) {
        const Vector r = s.phi * (d * x) - d * (s.phi * x);
        if (!r.is_zero()) {
            pre.fail("phi_D_commute", Witness{{x.leading_index()}, values_of(r),
                                              "[Phi,D] at " + format_vector(x, g.labels()) + " = " +
                                                  format_vector(r, g.labels())});
            commutes = false;
            break;
        }
    }
    if (commutes)
        pre.pass("phi_D_commute");
    require(pre, "sasakian_to_fk: preconditions fail");

    ExtensionResult ext = derivation_extension(g, d);
    const std::size_t dim = n + 1;
    const LieAlgebra& big = ext.algebra;
    const Vector xp = Vector::unit(dim, n);

    // alpha lifted by zero: same Kirillov form as alpha + x_P*, and x_P is
    // its principal element.
    const KForm phi = extend_by_zero(s.alpha, dim);
    Matrix j(dim, dim);
    for (std::size_t i = 0; i < n; ++i)
        j.set_column(i, pad(s.phi.column(i), dim) - a[i] * xp);
    j.set_column(n, pad(s.xi, dim));
    const KForm omega = -ce_differential(big, phi);

    Checked<FrobeniusStructure> frob = check_frobenius(big, phi);
    Checked<KahlerStructure> kahler = check_kahler(big, j, omega);
    CheckReport report;
    report.merge(frob.report, "frobenius.");
    report.merge(kahler.report, "kahler.");
    if (frob.structure) {
        const Vector& found = frob.structure->principal;
        report.add("principal_is_adjoined", found == xp,
                   Witness{{}, values_of(found), "principal element is " + format_vector(found, big.labels())});
    }
    return FrobeniusKahlerConstruction{std::move(ext), phi, j, omega, std::move(report), std::move(frob.structure),
                                       std::move(kahler.structure)};
}

ContactIdealRestriction contact_ideal_restriction(const LieAlgebra& g, const FrobeniusStructure& f,
                                                  const KahlerStructure& k)
{
    const std::size_t n = g.dim();
    CheckReport pre;
    pre.merge(check_frobenius(g, f.phi).report, "frobenius.");
    pre.merge(check_kahler(g, k.J, k.omega).report, "kahler.");
    pre.add("exact", k.omega == -ce_differential(g, f.phi), Witness{{}, {}, "omega differs from -dphi"});
    require(pre, "contact_ideal_restriction: input is not Frobenius-Kähler");

    const Vector xp = principal_element(g, f.phi);
    const std::size_t p = xp.leading_index();
    Matrix basis = Matrix::identity(n);
    basis.set_column(p, xp);
    const Matrix inv = *inverse(basis);

    // h = span{e_i : i != p}; must be an ideal.
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
        if (i != p)
            idx.push_back(i);
    const std::size_t m = n - 1;
    auto to_h = [&](const Vector& v) -> std::optional<Vector> {
        const Vector w = inv * v;
        if (!is_zero(w[p]))
            return std::nullopt;
        Vector out(m);
        for (std::size_t t = 0; t < m; ++t)
            out[t] = w[idx[t]];
        return out;
    };
    auto to_g = [&](const Vector& v) {
        Vector out(n);
        for (std::size_t t = 0; t < m; ++t)
            out[idx[t]] = v[t];
        return out;
    };

    CheckReport ideal;
    for (std::size_t i : idx)
        for (std::size_t j = 0; j < n; ++j)
            if (!to_h(g.basis_bracket(i, j)) && ideal.items().empty())
                ideal.fail("ideal", Witness{{i, j}, values_of(g.basis_bracket(i, j)),
                                            "[" + g.label(i) + "," + g.label(j) + "] leaves the complement of x_P"});
    if (ideal.items().empty())
        ideal.pass("ideal");
    require(ideal, "contact_ideal_restriction: complement of x_P is not an ideal");

    std::vector<LieAlgebra::Entry> entries;
    std::vector<std::string> labels;
    for (std::size_t t = 0; t < m; ++t)
        labels.push_back(g.label(idx[t]));
    for (std::size_t s = 0; s < m; ++s)
        for (std::size_t t = s + 1; t < m; ++t) {
            const Vector v = *to_h(g.basis_bracket(idx[s], idx[t]));
            if (!v.is_zero())
                entries.push_back({s, t, v});
        }
    LieAlgebra h(m, entries, labels);
    Matrix hbasis(n, m);
    for (std::size_t t = 0; t < m; ++t)
        hbasis.set_column(t, Vector::unit(n, idx[t]));

    ContactIdealRestriction out{h, hbasis, CheckReport(), std::nullopt};
    CheckReport& report = out.report;
    report.pass("ideal");

    Vector ah(m);
    for (std::size_t t = 0; t < m; ++t)
        ah[t] = f.phi.covector()[idx[t]];
    const KForm alpha = KForm::one_form(ah);
    Checked<ContactStructure> contact = check_contact(h, alpha);
    report.merge(contact.report, "contact.");
    if (!contact.structure)
        return out;
    const Vector xi = contact.structure->reeb;

    const std::vector<Vector> kernel = kernel_basis(alpha);
    std::vector<Vector> images;
    for (const Vector& x : kernel) {
        const auto jx = to_h(k.J * to_g(x));
        if (!jx || !is_zero(alpha(*jx))) {
            report.fail("J_preserves_kernel", Witness{{x.leading_index()}, values_of(k.J * to_g(x)),
                                                      "J(" + format_vector(x, labels) + ") = " +
                                                          format_vector(k.J * to_g(x), g.labels()) +
                                                          " is not in Ker(alpha|h)"});
            return out;
        }
        images.push_back(*jx);
    }
    report.pass("J_preserves_kernel");

    std::vector<Vector> domain = kernel;
    domain.push_back(xi);
    images.push_back(Vector(m));
    const Matrix phi = Matrix::from_columns(images) * *inverse(Matrix::from_columns(domain));

    // [ad(xi), Phi] = 0 on h
    const LinearMap ad_xi = adjoint(h, xi);
    add_map_identity(report, "reeb_commutes", ad_xi * phi, phi * ad_xi, labels, "[ad(xi),Phi] = 0");
    const bool criterion_a = report.find("reeb_commutes")->passed();

    // [ad(x_P), Phi] = 0 on Ker(alpha|h)
    bool criterion_b = true;
    for (const Vector& x : kernel) {
        const Vector adx = *to_h(bracket(g, xp, to_g(x)));
        const Vector adphix = *to_h(bracket(g, xp, to_g(phi * x)));
        const Vector r = adphix - phi * adx;
        if (!r.is_zero()) {
            report.fail("principal_commutes", Witness{{x.leading_index()}, values_of(r),
                                                      "[ad(x_P),Phi] at " + format_vector(x, labels) + " = " +
                                                          format_vector(r, labels)});
            criterion_b = false;
            break;
        }
    }
    if (criterion_b)
        report.pass("principal_commutes");
    report.add("criteria_agree", criterion_a == criterion_b,
               Witness{{}, {}, "the two commutation criteria disagree"});

    Checked<SasakianStructure> checked = check_sasakian(h, xi, alpha, phi);
    report.merge(checked.report, "sasakian.");
    if (report.passed())
        out.sasakian = std::move(checked.structure);
    return out;
}

}  // namespace lieforge
