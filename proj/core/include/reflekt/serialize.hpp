#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "reflekt/constructions.hpp"
#include "reflekt/networks.hpp"
#include "reflekt/oracles.hpp"
#include "reflekt/polyhedra.hpp"
#include "reflekt/verify.hpp"

namespace reflekt {

/// Value of the "schema" field in every JSON document written here.
inline constexpr std::string_view kSchema = "reflekt/1";

// Scalars are written as strings: "p/q" for rationals, shortest round-trip
// decimals for floats. Readers throw InvalidArgument on malformed input.

std::string to_json(const HPolyhedron& p);
HPolyhedron hpolyhedron_from_json(std::string_view text);

std::string to_json(const ExtendedFormulation& ef,
                    const std::optional<ConstructionRecipe>& recipe = std::nullopt);

struct LoadedFormulation {
  ExtendedFormulation ef;
  std::optional<ConstructionRecipe> recipe;
};
LoadedFormulation formulation_from_json(std::string_view text);

std::string to_json(const ConstructionRecipe& recipe);
ConstructionRecipe recipe_from_json(std::string_view text);

/// [k, l] pairs plus an "order" field.
std::string to_json(const ComparatorSeq& seq);
ComparatorSeq comparator_seq_from_json(std::string_view text);

std::string to_json(const VertexSet& set);

/// Wall time is left out unless asked for, so equal runs give equal bytes.
std::string to_json(const VerificationReport& report, bool include_timing = false);

/// CPLEX LP format. `objective` lives on the output space and is pulled back
/// through the projection; without one the objective is zero.
std::string to_lp_format(const ExtendedFormulation& ef, const Vector* objective = nullptr);

/// Fixed-section MPS with free variables.
std::string to_mps(const ExtendedFormulation& ef, const Vector* objective = nullptr);

}  // namespace reflekt
