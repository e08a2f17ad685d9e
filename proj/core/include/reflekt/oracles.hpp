#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

#include "reflekt/polyhedra.hpp"

namespace reflekt {

/// Pairwise distinct points in a deterministic order (first occurrence wins).
/// Floats are deduplicated on 1e-9 rounding buckets.
struct VertexSet {
  std::size_t dim = 0;
  std::vector<Vector> points;
  std::string label;

  std::size_t size() const { return points.size(); }
  bool contains(const Vector& p) const;
  VPolytope polytope() const { return VPolytope(dim, points); }
};

/// Hashed membership for repeated queries against one VertexSet.
class VertexLookup {
 public:
  explicit VertexLookup(const VertexSet& set);
  bool contains(const Vector& p) const;

 private:
  std::size_t dim_ = 0;
  std::unordered_set<std::string> keys_;
};

/// Builds a VertexSet, dropping duplicates.
VertexSet make_vertex_set(std::size_t dim, const std::vector<Vector>& points, std::string label);

/// All coordinate permutations of v (dim <= 8).
VertexSet permutation_orbit(const Vector& v);
/// Permutations combined with arbitrary sign changes (dim <= 6).
VertexSet signed_orbit(const Vector& v);
/// Permutations combined with an even number of sign changes (dim <= 6).
VertexSet even_signed_orbit(const Vector& v);
/// Sign changes only, no permutations (dim <= 16), for each input point.
VertexSet sign_orbit(const std::vector<Vector>& points);
/// (cos 2k pi/m, sin 2k pi/m), k = 0..m-1, float backend.
VertexSet mgon_orbit(std::size_t m);
/// Orbit of the given points under I2(m): m rotations and m reflections.
VertexSet i2_orbit(const std::vector<Vector>& points, std::size_t m);
/// Leaf-depth vectors of full binary trees with n labelled leaves (2 <= n <= 9).
VertexSet huffman_vectors(std::size_t n);
/// 0/1 vectors with odd (or even) coordinate sum (n <= 16).
VertexSet parity_vertices(std::size_t n, bool odd);
/// Completion-time vectors of all job orders (n <= 8).
VertexSet completion_time_vertices(const Vector& p);

}  // namespace reflekt
