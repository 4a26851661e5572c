#pragma once

#include "lieforge/linalg.hpp"
#include "lieforge/report.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace lieforge {

// Finite-dimensional Lie algebra given by rational structure constants in a
// fixed basis e_1..e_n: [e_i, e_j] = sum_k c[i][j][k] e_k. Only the entries
// with i < j are free; the antisymmetric completion is automatic and the
// diagonal is zero. The Jacobi identity is NOT enforced on construction
// (see check_jacobi).
class LieAlgebra {
public:
    struct Entry {
        std::size_t i;
        std::size_t j;
        Vector value;  // [e_i, e_j]
    };

    // Abelian algebra of the given dimension.
    explicit LieAlgebra(std::size_t dim, std::vector<std::string> labels = {});
    // Entries with i > j are read as [e_i, e_j] and stored antisymmetrically;
    // entries with i == j are ignored. A later entry for the same pair
    // replaces an earlier one.
    LieAlgebra(std::size_t dim, std::span<const Entry> brackets, std::vector<std::string> labels = {});

    static std::vector<std::string> default_labels(std::size_t dim);

    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    const Vector& basis_bracket(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
    const Scalar& constant(std::size_t i, std::size_t j, std::size_t k) const { return table_[i * dim_ + j][k]; }

    // Nonzero brackets with i < j, in lexicographic order.
    std::vector<Entry> upper_entries() const;

    friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

private:
    std::size_t dim_;
    std::vector<std::string> labels_;
    std::vector<Vector> table_;  // n*n, antisymmetric
};

// Structure constants equal, labels ignored.
bool same_structure(const LieAlgebra& a, const LieAlgebra& b);

// "1/2*e1 - e2" style rendering; "0" for the zero vector.
std::string format_vector(const Vector& v, const std::vector<std::string>& labels);

Vector bracket(const LieAlgebra& g, const Vector& x, const Vector& y);
CheckReport check_jacobi(const LieAlgebra& g);
LinearMap adjoint(const LieAlgebra& g, const Vector& x);
Subspace center(const LieAlgebra& g);
CheckReport is_derivation(const LieAlgebra& g, const LinearMap& d);

// Re-expresses g in the basis given by the columns of `basis` (must be
// invertible). Labels are kept.
LieAlgebra change_basis(const LieAlgebra& g, const Matrix& basis);

// Constraint vocabulary for derivation_space. All are affine in the n^2
// entries of the unknown map D.
struct LeibnizRule {};
struct FormScaling {  // phi ∘ D = lambda * phi
    Vector phi;       // coefficients of the 1-form in the dual basis
    Scalar lambda;
};
struct CommutesWith {  // D ∘ A = A ∘ D on a subspace (whole space if unset)
    LinearMap map;
    std::optional<Subspace> on;
};
struct MapsTo {  // D(v) = w
    Vector from;
    Vector to;
};
struct EntryEquals {  // D(row, col) = value
    std::size_t row;
    std::size_t col;
    Scalar value;
};
using DerivationConstraint = std::variant<LeibnizRule, FormScaling, CommutesWith, MapsTo, EntryEquals>;

struct DerivationSpace {
    std::optional<LinearMap> particular;  // nullopt when the system is inconsistent
    std::vector<LinearMap> homogeneous_basis;
    std::optional<std::string> failing_constraint;
};

// Solution set of the combined affine system in the n^2 entries of D,
// flattened row-major. The homogeneous basis is in reduced echelon order of
// the flattened vectors.
DerivationSpace derivation_space(const LieAlgebra& g, std::span<const DerivationConstraint> constraints);

LinearMap unflatten_map(const Vector& flat, std::size_t n);
Vector flatten_map(const LinearMap& m);

}  // namespace lieforge
