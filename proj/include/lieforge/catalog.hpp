#pragma once

#include "lieforge/structures.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lieforge {

// The worked examples shipped with the tool: the Heisenberg algebra h3, the
// Frobenius-Kähler algebra D_{4,1/2} and the two 5-dimensional Sasakian
// algebras obtained from it.
struct Builtin {
    std::string name;
    std::string description;
    LieAlgebra algebra;
    std::optional<SasakianStructure> sasakian;
    std::optional<FrobeniusStructure> frobenius;
    std::optional<KahlerStructure> kahler;
    std::map<std::string, LinearMap> maps;  // named maps usable as --map NAME
};

std::vector<std::string> builtin_names();
// Throws std::invalid_argument listing the valid names.
const Builtin& builtin(std::string_view name);

}  // namespace lieforge
