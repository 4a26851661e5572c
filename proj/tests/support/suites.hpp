#pragma once

// Randomized suites shared by the property tests (small counts) and the
// acceptance binary (full counts). Each returns a tally instead of asserting
// so both drivers can report the first failure in their own way.

#include "lieforge/catalog.hpp"
#include "lieforge/extensions.hpp"
#include "lieforge/structures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <sstream>
#include <string>

namespace lieforge::testing {

struct Tally {
    int instances = 0;
    int failures = 0;
    int skipped = 0;
    std::string first_failure;
    std::string summary;

    void record(bool ok, const std::string& what)
    {
        ++instances;
        if (ok)
            return;
        if (failures++ == 0)
            first_failure = what;
    }
    bool passed() const { return failures == 0; }
};

inline LieAlgebra heisenberg3()
{
    const LieAlgebra::Entry e[] = {{0, 1, Vector{0, 0, 1}}};
    return LieAlgebra(3, e);
}

inline std::string describe(const Matrix& m)
{
    std::ostringstream out;
    out << "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << (r ? "; " : "");
        for (std::size_t c = 0; c < m.cols(); ++c)
            out << (c ? "," : "") << to_string(m(r, c));
    }
    out << "]";
    return out.str();
}

inline Vector pad_to(const Vector& v, std::size_t n)
{
    Vector out(n);
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i];
    return out;
}

// Double-extension parameters solved from the Reeb vector, with the
// conditions' verdict compared against a direct Sasakian check of the
// constructed algebra. Base h3; theta from its cocycle space; D a diagonal
// derivation of g_theta with alpha(D z) != 0.
inline Tally double_extension_equivalence(std::uint64_t seed, int count)
{
    Rng rng(seed);
    const LieAlgebra h = heisenberg3();
    const SasakianStructure s = *builtin("h3").sasakian;
    const auto cocycles = closed_two_forms(h);
    Tally tally;
    int passing = 0;
    while (tally.instances < count) {
        KForm theta(3, 2);
        if (coin(rng))
            for (const auto& c : cocycles)
                if (coin(rng, 0.4))
                    theta += Scalar(small_int(rng, -2, 2)) * c;
        const LieAlgebra gt = central_extension(h, theta).algebra;
        std::vector<DerivationConstraint> rules{LeibnizRule{}};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (i != j)
                    rules.push_back(EntryEquals{i, j, 0});
        const auto diagonal = derivation_space(gt, rules).homogeneous_basis;
        Matrix d(4, 4);
        for (const auto& b : diagonal)
            d += Scalar(coin(rng, 0.5) ? 0 : small_int(rng, -2, 2)) * b;
        if (is_zero(d(3, 3))) {
            ++tally.skipped;
            continue;
        }
        DoubleExtensionParams p;
        try {
            p = solve_double_extension_params(h, s, theta, d);
        } catch (const PreconditionError&) {
            ++tally.skipped;  // alpha is not contact, or the Reeb vector leaves g_theta
            continue;
        }
        const bool conditions = double_extension_conditions(h, s, theta, d, p).passed();
        const SasakianConstruction built = sasakian_double_extension(h, s, theta, d, p);
        const bool direct = check_sasakian(built.extension.algebra, built.xi, built.alpha, built.phi).report.passed();
        passing += direct ? 1 : 0;
        std::string what;
        if (conditions != direct) {
            const CheckItem* f = built.report.first_failure();
            what = "theta terms " + std::to_string(theta.terms().size()) + ", D = " + describe(d) +
                   ": conditions " + (conditions ? "pass" : "fail") + ", Sasakian check " +
                   (direct ? "pass" : "fails at " + (f ? f->name : std::string("?")));
        }
        tally.record(conditions == direct, what);
    }
    tally.summary = std::to_string(passing) + " Sasakian, " + std::to_string(tally.instances - passing) +
                    " not, " + std::to_string(tally.failures) + " disagreements";
    return tally;
}

// N_Phi(X,Y) - N_J(x,y) + dalpha(X,Y) xi = 0 on the central extension of an
// almost-Kähler algebra by omega, with Phi = J on g, Phi(z) = 0, alpha = z*.
inline Tally nijenhuis_identity(std::uint64_t seed, int count)
{
    Rng rng(seed);
    Tally tally;
    int non_integrable = 0;
    for (int trial = 0; trial < count; ++trial) {
        const std::size_t n = trial % 2 == 0 ? 2 : 4;
        const Symplectic sym = random_symplectic_algebra(rng, n);
        const Matrix j = random_compatible_j(rng, sym.omega);
        const ExtensionResult ext = central_extension(sym.algebra, sym.omega);
        const LieAlgebra& big = ext.algebra;
        const std::size_t z = *ext.central;
        Matrix phi(n + 1, n + 1);
        for (std::size_t i = 0; i < n; ++i)
            phi.set_column(i, pad_to(j.column(i), n + 1));
        const KForm alpha = KForm::one_form(Vector::unit(n + 1, z));
        const KForm dalpha = oracle::differential(big, alpha);
        const NijenhuisTable nphi = nijenhuis(big, phi);
        const NijenhuisTable nj = nijenhuis_complex(sym.algebra, j);
        non_integrable += nj.is_zero() ? 0 : 1;
        bool ok = true;
        for (std::size_t a = 0; a <= n && ok; ++a)
            for (std::size_t b = 0; b <= n && ok; ++b) {
                Vector residual = nphi(a, b);
                if (a < n && b < n)
                    residual -= pad_to(nj(a, b), n + 1);
                residual[z] += oracle::value(dalpha, {a, b});
                ok = residual.is_zero();
            }
        tally.record(ok, "dim " + std::to_string(n) + " J = " + describe(j));
    }
    tally.summary = std::to_string(non_integrable) + " of " + std::to_string(count) + " with N_J != 0";
    return tally;
}

// With preconditions bypassed: Jacobi of the output iff the precondition.
inline Tally extension_iff(std::uint64_t seed, int count)
{
    Rng rng(seed);
    Tally tally;
    int positive = 0;
    for (int trial = 0; trial < count; ++trial) {
        const std::size_t n = static_cast<std::size_t>(small_int(rng, 2, 5));
        const LieAlgebra g = random_lie_algebra(rng, n);
        bool precondition, jacobi;
        std::string kind;
        if (trial % 2 == 0) {
            kind = "central";
            const KForm theta = coin(rng) ? combination(rng, closed_two_forms(g), n, 2) : random_form(rng, n, 2);
            precondition = oracle::differential(g, theta).is_zero();
            jacobi = check_jacobi(central_extension(g, theta, {.force = true}).algebra).passed();
        } else {
            kind = "derivation";
            const Matrix d = coin(rng) ? random_derivation(rng, g) : random_matrix(rng, n, n);
            precondition = oracle::leibniz_holds(g, d);
            jacobi = check_jacobi(derivation_extension(g, d, {.force = true}).algebra).passed();
        }
        positive += precondition ? 1 : 0;
        tally.record(precondition == jacobi, kind + " extension, dim " + std::to_string(n));
    }
    tally.summary = std::to_string(positive) + " valid, " + std::to_string(count - positive) + " invalid inputs";
    return tally;
}

// Kähler algebras for the round trip: flat R^2, R^4, aff(1) and D_{4,1/2},
// each transported by a random change of basis and a positive rescaling of
// omega.
inline std::pair<LieAlgebra, KahlerStructure> random_kahler(Rng& rng)
{
    LieAlgebra g(2);
    Matrix j;
    KForm omega(2, 2);
    switch (small_int(rng, 0, 3)) {
    case 0:
        j = Matrix::from_rows({{0, -1}, {1, 0}});
        omega.add_term({0, 1}, 1);
        break;
    case 1: {
        g = LieAlgebra(4);
        omega = KForm(4, 2);
        omega.add_term({0, 2}, 1);
        omega.add_term({1, 3}, 1);
        j = random_compatible_j(rng, omega);
        break;
    }
    case 2: {
        const LieAlgebra::Entry e[] = {{0, 1, Vector{0, 1}}};
        g = LieAlgebra(2, e);
        j = Matrix::from_rows({{0, -1}, {1, 0}});
        omega.add_term({0, 1}, 1);
        break;
    }
    default: {
        const auto& b = builtin("d4half");
        g = b.algebra;
        j = b.kahler->J;
        omega = b.kahler->omega;
    }
    }
    const std::size_t n = g.dim();
    const Matrix p = random_invertible(rng, n);
    const Matrix pinv = *inverse(p);
    const LieAlgebra moved = change_basis(g, p);
    const Matrix j2 = pinv * j * p;
    const KForm w2 = Scalar(small_int(rng, 1, 3)) * pullback(omega, p);
    return {moved, KahlerStructure{j2, w2, kahler_metric(j2, w2)}};
}

inline SasakianStructure transport(const SasakianStructure& s, const Matrix& p, const LieAlgebra& moved)
{
    const Matrix pinv = *inverse(p);
    const KForm alpha = pullback(s.alpha, p);
    const Matrix phi = pinv * s.phi * p;
    return SasakianStructure{pinv * s.xi, alpha, phi, sasakian_metric(moved, alpha, phi)};
}

inline bool round_trip_once(const LieAlgebra& g, const SasakianStructure& s, std::string& why)
{
    const SasakianReduction red = sasakian_reduction(g, s);
    if (!red.kahler) {
        why = "reduction is not Kähler";
        return false;
    }
    const SasakianConstruction back = kahler_to_sasakian_central(red.algebra, *red.kahler);
    if (!same_structure(back.extension.algebra, change_basis(g, red.basis))) {
        why = "structure constants differ";
        return false;
    }
    return true;
}

inline Tally round_trip(std::uint64_t seed, int random_count)
{
    Rng rng(seed);
    Tally tally;
    for (const char* name : {"h3", "g5"}) {
        const auto& b = builtin(name);
        std::string why;
        const bool ok = round_trip_once(b.algebra, *b.sasakian, why);
        tally.record(ok, std::string(name) + ": " + why);
    }
    while (tally.instances < random_count + 2) {
        const auto [g, k] = random_kahler(rng);
        const SasakianConstruction sas = kahler_to_sasakian_central(g, k);
        if (!sas.sasakian) {
            tally.record(false, "construction from a Kähler algebra failed");
            continue;
        }
        const LieAlgebra& big = sas.extension.algebra;
        if (center(big).dim() != 1) {
            ++tally.skipped;
            continue;
        }
        const Matrix p = random_invertible(rng, big.dim());
        const LieAlgebra moved = change_basis(big, p);
        const SasakianStructure s = transport(*sas.sasakian, p, moved);
        std::string why;
        const bool ok = round_trip_once(moved, s, why);
        tally.record(ok, "dim " + std::to_string(big.dim()) + ": " + why);
    }
    return tally;
}

// The obstruction to a Kähler structure on central extensions of a Sasakian
// algebra: theta = 0 plus `random_count` nonzero cocycles.
inline Tally no_go(std::uint64_t seed, const std::string& name, int random_count)
{
    Rng rng(seed);
    const auto& b = builtin(name);
    const std::size_t n = b.algebra.dim();
    const auto cocycles = closed_two_forms(b.algebra);
    Tally tally;
    int integrability = 0, closedness = 0;
    auto run = [&](const KForm& theta) {
        const KahlerObstruction ob = kahler_extension_obstruction(b.algebra, *b.sasakian, theta);
        integrability += ob.integrable ? 0 : 1;
        closedness += ob.closed ? 0 : 1;
        tally.record(ob.report.passed(), name + " with " + std::to_string(theta.terms().size()) + "-term theta");
    };
    run(KForm(n, 2));
    while (tally.instances < random_count + 1) {
        const KForm theta = combination(rng, cocycles, n, 2);
        if (theta.is_zero())
            continue;
        run(theta);
    }
    tally.summary = std::to_string(integrability) + " non-integrable, " + std::to_string(closedness) + " non-closed";
    return tally;
}

// d∘d = 0 in every degree and B_phi = -dphi, with the library's differential
// also compared against the oracle.
inline Tally calculus(std::uint64_t seed, int count)
{
    Rng rng(seed);
    Tally tally;
    for (int trial = 0; trial < count; ++trial) {
        const std::size_t n = static_cast<std::size_t>(small_int(rng, 1, 6));
        const LieAlgebra g = random_lie_algebra(rng, n);
        bool ok = check_jacobi(g).passed();
        std::string where = ok ? "" : "generator produced a non-Jacobi algebra";
        for (std::size_t k = 0; k <= n && ok; ++k) {
            const KForm w = random_form(rng, n, k);
            const KForm dw = ce_differential(g, w);
            if (dw != oracle::differential(g, w)) {
                ok = false;
                where = "d disagrees with the oracle in degree " + std::to_string(k);
            } else if (!ce_differential(g, dw).is_zero()) {
                ok = false;
                where = "dd != 0 in degree " + std::to_string(k);
            }
            // d is linear, so dd = 0 on every basis monomial covers all forms.
            oracle::for_each_increasing(n, k, [&](const oracle::Tuple& t) {
                if (!ok)
                    return;
                KForm mono(n, k);
                mono.add_term(t, 1);
                if (!ce_differential(g, ce_differential(g, mono)).is_zero()) {
                    ok = false;
                    where = "dd != 0 on a basis monomial of degree " + std::to_string(k);
                }
            });
        }
        if (ok) {
            const KForm phi = random_form(rng, n, 1, 0.2);
            const KForm b = kirillov_form(g, phi);
            if (b + ce_differential(g, phi) != KForm(n, 2)) {
                ok = false;
                where = "B_phi != -dphi";
            }
            for (std::size_t i = 0; i < n && ok; ++i)
                for (std::size_t j = 0; j < n && ok; ++j)
                    if (oracle::value(b, {i, j}) != phi(oracle::lie_bracket(g, Vector::unit(n, i), Vector::unit(n, j)))) {
                        ok = false;
                        where = "B_phi(e_i,e_j) != phi([e_i,e_j])";
                    }
        }
        tally.record(ok, "dim " + std::to_string(n) + ": " + where);
    }
    return tally;
}

}  // namespace lieforge::testing
