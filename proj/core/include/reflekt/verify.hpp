#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "reflekt/constructions.hpp"
#include "reflekt/oracles.hpp"
#include "reflekt/polyhedra.hpp"

namespace reflekt {

struct CountCheck {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t lifted = 0;  // passed via an explicit point of Q, no LP needed
  bool ok() const { return passed == total; }
};

struct ObjectiveCheck {
  std::size_t total = 0;
  std::size_t passed = 0;
  double max_deviation = 0.0;
  bool ok() const { return passed == total; }
};

struct SizeCheck {
  ExpectedSize expected;
  ExpectedSize actual;
  bool pass = false;
  std::vector<std::string> diffs;
};

struct HypothesisCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::string label;
  CountCheck vertices;
  ObjectiveCheck objectives;
  std::optional<SizeCheck> size;
  std::vector<HypothesisCheck> hypotheses;
  std::vector<std::string> failures;  // first few failing points/objectives
  double wall_seconds = 0.0;

  bool passed() const;
};

struct VerifyOptions {
  std::size_t objectives = 50;
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
  std::size_t failures_listed = 5;
  /// Stop at the first failing vertex or objective.
  bool stop_early = false;
  /// Optional candidate point of the raw Q over a vertex. A candidate that
  /// passes exact substitution certifies the vertex; otherwise the LP decides.
  std::function<std::optional<Vector>(const Vector&)> lift;
  /// verify_recipe and mutation_sweep supply chain_lift as `lift` when set.
  bool chain_lifts = true;
};

/// Nonzero integer objectives with entries in [-10, 10].
std::vector<Vector> random_objectives(std::size_t count, std::size_t dim, std::uint64_t seed,
                                      Backend backend);

/**
 * Every oracle point lies in the projection, and the support function of the
 * projection matches the oracle's on seeded random integer directions.
 * Equations are eliminated once up front.
 */
VerificationReport verify_projection_equality(const ExtendedFormulation& ef, const VertexSet& oracle,
                                              const VerifyOptions& options = {});

struct ConditionResult {
  bool condition1 = false;  // base inside conv(W), reflections keep conv(W)
  bool condition2 = false;  // preimage chain maps W into the base
  std::string detail;
  bool ok() const { return condition1 && condition2; }
};

/// The two sufficient conditions for a reflection chain to map conv(base) onto conv(target).
ConditionResult check_chain_conditions(const VertexSet& base, std::span<const ReflectionSpec> chain,
                                       const VertexSet& target, double tol = kDefaultTolerance);

/// Condition 2 for a mixed chain (reflections plus sectioned graph relations).
bool check_chain_preimages(const RelationChain& chain, const VertexSet& base, const VertexSet& target,
                           std::string* detail = nullptr, double tol = kDefaultTolerance);

/**
 * On sampled domain points x: each generator image lies in the fiber, and for
 * random objectives the fiber optimum equals the best generator image.
 * Returns false when the relation has no generators.
 */
bool check_affine_generators(const PolyhedralRelation& rel, std::size_t samples, std::uint64_t seed,
                             double tol = kDefaultTolerance);

/// Integer comparison of inequalities, raw and reduced variables, and extras.
SizeCheck size_report(const ExtendedFormulation& ef, const ExpectedSize& expected);

/// Vertices of a recipe's base polytope (point, simplex corners, or segment ends).
std::vector<Vector> recipe_base_vertices(const ConstructionRecipe& recipe);

/// Brute-force vertex set of the polytope a recipe is supposed to produce.
VertexSet recipe_oracle(const ConstructionRecipe& recipe);

/// Build, verify against the oracle, compare sizes, and run the hypothesis checks.
VerificationReport verify_recipe(const ConstructionRecipe& recipe, const VerifyOptions& options = {});

enum class MutationKind { detected, type_chain_break, undetected };

struct MutationOutcome {
  std::size_t index = 0;  // 0-based position of the dropped relation
  std::string relation;
  MutationKind kind = MutationKind::undetected;
};

/// Drops each relation in turn and re-verifies against the oracle.
std::vector<MutationOutcome> mutation_sweep(const RelationChain& chain, const VertexSet& oracle,
                                            const VerifyOptions& options = {});

std::string report_table(const VerificationReport& report);

}  // namespace reflekt
