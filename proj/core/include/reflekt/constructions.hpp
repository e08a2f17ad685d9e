#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reflekt/networks.hpp"
#include "reflekt/polyhedra.hpp"
#include "reflekt/reflections.hpp"

namespace reflekt {

/**
 * A base polyhedron plus relations in composition order. `sections` runs
 * parallel to `relations`: for a graph relation it may hold a left inverse
 * used as the canonical preimage; reflection relations use their spec.
 */
struct RelationChain {
  HPolyhedron base;
  std::vector<PolyhedralRelation> relations;
  std::vector<std::optional<AffineMap>> sections;
  std::string label;
  std::map<std::string, std::size_t> extras;

  void push(PolyhedralRelation rel, std::optional<AffineMap> section = std::nullopt);
  std::size_t size() const { return relations.size(); }
};

/// compose_extension over the chain, with the chain's extras copied to the ledger.
ExtendedFormulation build_extension(const RelationChain& chain, bool check_nonempty = true);

/// Canonical preimage of y through the whole chain, last relation first.
/// Throws InvalidArgument when a relation has neither a spec nor a section.
Vector chain_preimage(const RelationChain& chain, const Vector& y, double tol = kDefaultTolerance);

/// Raw point (z_0, ..., z_r) of the composed extension over y, made of the
/// successive canonical preimages. Empty when a relation has no preimage map.
/// The caller still has to check that the point lies in Q.
std::optional<Vector> chain_lift(const RelationChain& chain, const Vector& y,
                                 double tol = kDefaultTolerance);

/// The chain with relation `index` (0-based) removed.
RelationChain without_relation(const RelationChain& chain, std::size_t index);

/// Reflection specs of the chain's reflection relations, in order.
std::vector<ReflectionSpec> chain_specs(const RelationChain& chain);

/// ceil(log2 m) for m >= 1.
std::size_t ceil_log2(std::size_t m);

/// Halfspace {(-sin phi) x_1 + (cos phi) x_2 <= 0}, float backend.
ReflectionSpec i2_spec(double phi);

RelationChain signing_chain(const HPolyhedron& base);
/// Relations for the halfspaces at pi/m, 2pi/m, 4pi/m, ..., 2^r pi/m with r = ceil(log2 m).
RelationChain i2_chain(const HPolyhedron& base, std::size_t m);
RelationChain mgon_chain(std::size_t m);
/// `net` must sort; it is converted to relation order.
RelationChain a_permutahedron_chain(const HPolyhedron& base, const ComparatorSeq& net);
RelationChain b_permutahedron_chain(const HPolyhedron& base, const ComparatorSeq& net);
/// An empty `net` is accepted and contributes no transpositions.
RelationChain d_permutahedron_chain(const HPolyhedron& base, const ComparatorSeq& net);
/// D-chain over (-1,1,...,1) or (1,...,1) followed by the graph of y -> (1 - y)/2.
RelationChain parity_chain(std::size_t n, bool odd);
RelationChain huffman_quadratic_chain(std::size_t n);
/// Stride sequences on the inner levels, `net` (sorting n entries) on the top level.
RelationChain huffman_nlogn_chain(std::size_t n, const ComparatorSeq& net);
/// Lift x -> (x, u), u in [0,1]^{k-1}, then the graph of the scheduling map, k = 2..n.
RelationChain completion_time_chain(const Vector& p);

/// Graph relation of (x_1..x_{k-2}, x_{k-1}+1, x_{k-1}+1) : R^{k-1} -> R^k.
AffineMap huffman_embedding(std::size_t k);
/// (y_1..y_{k-2}, y_{k-1}-1) : R^k -> R^{k-1}.
AffineMap huffman_contraction(std::size_t k);

/// Level sequences, index 0 holding level 3 and the last one level n.
std::vector<ComparatorSeq> huffman_quadratic_levels(std::size_t n);
std::vector<ComparatorSeq> huffman_nlogn_levels(std::size_t n, const ComparatorSeq& net);

/// Points x after each level's comparators, top level first: entry i is the
/// level-(n-i) image of v (before contracting).
std::vector<Vector> huffman_level_images(const Vector& v, const std::vector<ComparatorSeq>& levels);

/// x_{k-1} = x_k = max(x_1..x_k) on every level image.
bool huffman_level_property(const Vector& v, const std::vector<ComparatorSeq>& levels);

ExtendedFormulation signing_ef(const HPolyhedron& base);
ExtendedFormulation mgon_ef(std::size_t m);
ExtendedFormulation i2_permutahedron_ef(const HPolyhedron& base, std::size_t m);
ExtendedFormulation a_permutahedron_ef(const HPolyhedron& base, const ComparatorSeq& net);
ExtendedFormulation b_permutahedron_ef(const HPolyhedron& base, const ComparatorSeq& net);
ExtendedFormulation d_permutahedron_ef(const HPolyhedron& base, const ComparatorSeq& net);
ExtendedFormulation parity_polytope_ef(std::size_t n, bool odd);
ExtendedFormulation huffman_ef_quadratic(std::size_t n);
ExtendedFormulation huffman_ef_nlogn(std::size_t n, const ComparatorSeq& net);
ExtendedFormulation completion_time_ef(const Vector& p);

// ---------------------------------------------------------------------------
// Recipes

enum class RecipeName {
  signing,
  mgon,
  i2_permutahedron,
  a_permutahedron,
  b_permutahedron,
  d_permutahedron,
  parity,
  huffman_quadratic,
  huffman_nlogn,
  completion_time,
};

std::string_view to_string(RecipeName name);
RecipeName parse_recipe_name(std::string_view text);
const std::vector<RecipeName>& all_recipes();

/**
 * Recipe parameters as strings:
 *   n, m              positive integers
 *   parity            odd | even
 *   base              comma list (a point), "simplex", or "segment" (i2 only)
 *   p                 comma list of processing times
 *   network           batcher | insertion | none (none only sorts for n = 1;
 *                     d_permutahedron accepts it)
 *   backend           rational | float
 */
struct ConstructionRecipe {
  RecipeName name = RecipeName::signing;
  std::map<std::string, std::string> params;

  friend bool operator==(const ConstructionRecipe&, const ConstructionRecipe&) = default;
};

/// Rejects unknown keys and malformed or out-of-range values with InvalidArgument,
/// and rational requests for the float-only mgon / i2_permutahedron with BackendMismatch.
void validate(const ConstructionRecipe& recipe);

Backend recipe_backend(const ConstructionRecipe& recipe);
std::size_t recipe_dimension(const ConstructionRecipe& recipe);
HPolyhedron recipe_base(const ConstructionRecipe& recipe);
ComparatorSeq recipe_network(const ConstructionRecipe& recipe);

RelationChain recipe_chain(const ConstructionRecipe& recipe);
ExtendedFormulation build_recipe(const ConstructionRecipe& recipe);
/// "name key=value ...", the label build_recipe assigns.
std::string recipe_label(const ConstructionRecipe& recipe);

/// Sizes from the closed-form counts, independent of any built chain.
struct ExpectedSize {
  std::size_t inequalities = 0;
  std::size_t raw_variables = 0;
  std::size_t reduced_variables = 0;
  std::map<std::string, std::size_t> extras;

  friend bool operator==(const ExpectedSize&, const ExpectedSize&) = default;
};

ExpectedSize expected_size(const ConstructionRecipe& recipe);

}  // namespace reflekt
