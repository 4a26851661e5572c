#pragma once

#include "lieforge/algebra.hpp"
#include "lieforge/forms.hpp"

#include <optional>
#include <vector>

namespace lieforge {

// An extended algebra plus the bookkeeping needed to find the parent inside
// it. The parent basis always keeps its indices (embedding is the identity
// on 0..n-1); new elements follow.
struct ExtensionResult {
    LieAlgebra algebra;
    std::vector<std::size_t> embedding;
    std::optional<std::size_t> central;     // z
    std::optional<std::size_t> derivation;  // adjoined derivation slot
    std::optional<KForm> cocycle;           // theta used for the central step
    std::optional<LinearMap> derivation_map;
};

// Preconditions are enforced unless `force` is set. Forcing exists so the
// iff-properties (Jacobi of the output vs. the precondition) can be tested.
struct ExtensionOptions {
    bool force = false;
};

CheckReport is_cocycle(const LieAlgebra& g, const KForm& theta);

// g ⊕ <z> with [x,y]_theta = [x,y] + theta(x,y) z and z central.
ExtensionResult central_extension(const LieAlgebra& g, const KForm& theta, ExtensionOptions options = {});

// <d> ⋉ g with [d, x] = D(x).
ExtensionResult derivation_extension(const LieAlgebra& g, const LinearMap& d, ExtensionOptions options = {});

// Central extension by theta, then adjoin D, which acts on the (n+1)-dim
// central extension. Basis: parent, z, d.
ExtensionResult double_extension(const LieAlgebra& g, const KForm& theta, const LinearMap& d,
                                 ExtensionOptions options = {});

// Adjoin D first, then centrally extend g(D) by omega = -d(alpha), alpha
// extended by zero on the new slot. Requires omega to be nondegenerate.
// Basis: parent, d, z.
ExtensionResult reversed_double_extension(const LieAlgebra& g, const KForm& alpha, const LinearMap& d,
                                          ExtensionOptions options = {});

}  // namespace lieforge
