#include "doctest.h"

#include "lieforge/catalog.hpp"
#include "lieforge/structures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/suites.hpp"

using namespace lieforge;
namespace t = lieforge::testing;

namespace {

void require_clean(const t::Tally& tally)
{
    INFO(tally.first_failure);
    INFO(tally.summary);
    CHECK(tally.instances > 0);
    CHECK(tally.failures == 0);
}

}  // namespace

TEST_CASE("wedge is graded-commutative and associative")
{
    t::Rng rng(201);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = static_cast<std::size_t>(t::small_int(rng, 1, 6));
        const std::size_t p = static_cast<std::size_t>(t::small_int(rng, 0, 3));
        const std::size_t q = static_cast<std::size_t>(t::small_int(rng, 0, 3));
        const std::size_t r = static_cast<std::size_t>(t::small_int(rng, 0, 2));
        const KForm a = t::random_form(rng, n, p), b = t::random_form(rng, n, q), c = t::random_form(rng, n, r);
        const Scalar sign = (p * q) % 2 == 0 ? 1 : -1;
        CHECK(wedge(a, b) == sign * wedge(b, a));
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
}

TEST_CASE("radical is the kernel of the Gram matrix")
{
    t::Rng rng(202);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = static_cast<std::size_t>(t::small_int(rng, 1, 6));
        const LieAlgebra g = t::random_lie_algebra(rng, n);
        const KForm b = t::coin(rng) ? t::random_form(rng, n, 2) : kirillov_form(g, t::random_form(rng, n, 1));
        const Subspace rad = radical(g, b);
        for (const Vector& v : rad.basis())
            CHECK((b.gram() * v).is_zero());
        CHECK(rank(b.gram()) + rad.dim() == n);
    }
}

TEST_CASE("inner derivations solve the Leibniz system")
{
    t::Rng rng(203);
    const DerivationConstraint leibniz[] = {LeibnizRule{}};
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = static_cast<std::size_t>(t::small_int(rng, 1, 5));
        const LieAlgebra g = t::random_lie_algebra(rng, n);
        const auto der = derivation_space(g, leibniz);
        std::vector<Vector> flat;
        for (const auto& m : der.homogeneous_basis)
            flat.push_back(flatten_map(m));
        const Subspace span = Subspace::span(n * n, flat);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(span.contains(flatten_map(adjoint(g, Vector::unit(n, i)))));
        for (const auto& m : der.homogeneous_basis)
            CHECK(t::oracle::leibniz_holds(g, m));
    }
}

TEST_CASE("Jacobi witnesses reproduce a nonzero cyclic sum")
{
    t::Rng rng(204);
    int failing = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = static_cast<std::size_t>(t::small_int(rng, 3, 5));
        const LieAlgebra g = t::random_bracket_table(rng, n);
        const CheckReport r = check_jacobi(g);
        CHECK(r.passed() == !t::oracle::jacobi_violation(g).has_value());
        for (const CheckItem& item : r.items()) {
            if (item.passed())
                continue;
            ++failing;
            REQUIRE(item.witness.indices.size() == 3);
            const Vector x = Vector::unit(n, item.witness.indices[0]);
            const Vector y = Vector::unit(n, item.witness.indices[1]);
            const Vector z = Vector::unit(n, item.witness.indices[2]);
            const Vector sum =
                bracket(g, bracket(g, x, y), z) + bracket(g, bracket(g, y, z), x) + bracket(g, bracket(g, z, x), y);
            CHECK_FALSE(sum.is_zero());
            CHECK(std::vector<Scalar>(sum.begin(), sum.end()) == item.witness.values);
        }
    }
    CHECK(failing > 10);
}

TEST_CASE("contact verdicts are scale invariant and the Reeb line is the radical")
{
    t::Rng rng(205);
    int contact = 0;
    for (int trial = 0; trial < 40; ++trial) {
        LieAlgebra g(1);
        KForm alpha(1, 1);
        if (t::coin(rng)) {
            const std::size_t n = t::coin(rng) ? 3 : 5;
            g = t::random_lie_algebra(rng, n);
            alpha = t::random_form(rng, n, 1, 0.2);
        } else {
            const auto [k, kahler] = t::random_kahler(rng);
            auto sas = kahler_to_sasakian_central(k, kahler);
            g = sas.extension.algebra;
            alpha = sas.alpha;
        }
        const Scalar lambda = t::nonzero_scalar(rng);
        const auto a = check_contact(g, alpha);
        const auto b = check_contact(g, lambda * alpha);
        CHECK(a.report.passed() == b.report.passed());
        if (!a.structure)
            continue;
        ++contact;
        const Vector xi = a.structure->reeb;
        CHECK(b.structure->reeb == (1 / lambda) * xi);
        const Vector line[] = {xi};
        CHECK(radical(g, kirillov_form(g, alpha)) == Subspace::span(g.dim(), line));
        CHECK(alpha(xi) == 1);
    }
    CHECK(contact > 10);
}

TEST_CASE("Frobenius-Kähler to Sasakian output always verifies")
{
    t::Rng rng(206);
    const auto& d4 = builtin("d4half");
    int built = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const Matrix p = t::random_invertible(rng, 4);
        const Matrix pinv = *inverse(p);
        const LieAlgebra g = change_basis(d4.algebra, p);
        const Scalar scale = t::small_int(rng, 1, 3);
        const KForm phi = scale * pullback(d4.frobenius->phi, p);
        const Matrix j = pinv * d4.kahler->J * p;
        const KForm omega = -ce_differential(g, phi);
        const KahlerStructure k{j, omega, kahler_metric(j, omega)};
        const FrobeniusStructure f{phi, principal_element(g, phi)};
        const DerivationConstraint rules[] = {LeibnizRule{}, FormScaling{phi.covector(), 0}, CommutesWith{j, {}}};
        const auto space = derivation_space(g, rules);
        const Matrix d = t::combination(rng, space.homogeneous_basis, 4);
        const SasakianConstruction out = fk_to_sasakian(g, f, k, d);
        CHECK(out.report.passed());
        built += out.sasakian ? 1 : 0;
    }
    CHECK(built == 25);
}

TEST_CASE("Sasakian to Frobenius-Kähler output always verifies")
{
    t::Rng rng(207);
    int built = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const auto [k, kahler] = t::random_kahler(rng);
        const auto sas = kahler_to_sasakian_central(k, kahler);
        const LieAlgebra& g = sas.extension.algebra;
        const SasakianStructure& s = *sas.sasakian;
        const Vector a = s.alpha.covector();
        const Subspace ker = nullspace(Matrix::from_rows({std::vector<Scalar>(a.begin(), a.end())}));
        const DerivationConstraint rules[] = {LeibnizRule{}, FormScaling{s.alpha.covector(), 1},
                                              CommutesWith{s.phi, ker}};
        const auto space = derivation_space(g, rules);
        if (!space.particular)
            continue;
        const Matrix d = *space.particular + t::combination(rng, space.homogeneous_basis, g.dim());
        const auto fk = sasakian_to_fk(g, s, d);
        CHECK(fk.report.passed());
        REQUIRE(fk.frobenius);
        CHECK(fk.frobenius->principal == Vector::unit(g.dim() + 1, g.dim()));
        ++built;
    }
    CHECK(built > 5);
}

TEST_CASE("almost-Kähler central extensions satisfy the Nijenhuis identity")
{
    require_clean(t::nijenhuis_identity(301, 30));
}

TEST_CASE("forced extensions satisfy Jacobi exactly when the precondition holds")
{
    require_clean(t::extension_iff(302, 60));
}

TEST_CASE("reduction followed by central extension is the identity")
{
    require_clean(t::round_trip(303, 8));
}

TEST_CASE("central extensions of Sasakian algebras are never Kähler this way")
{
    require_clean(t::no_go(304, "h3", 4));
    require_clean(t::no_go(305, "g0", 4));
}

TEST_CASE("d squares to zero and the Kirillov form is -dphi")
{
    require_clean(t::calculus(306, 30));
}
