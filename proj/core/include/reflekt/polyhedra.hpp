#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reflekt/linalg.hpp"

namespace reflekt {

/// One row <coeffs, x> (<= or =) rhs.
struct LinearConstraint {
  Vector coeffs;
  Scalar rhs;
};

/// {x : A x <= b, C x = d}. Inequalities and equations are counted separately.
class HPolyhedron {
 public:
  HPolyhedron() = default;
  HPolyhedron(std::size_t dim, Backend backend) : dim_(dim), backend_(backend) {}

  /// {v}, described by dim(v) equations and no inequalities.
  static HPolyhedron point(const Vector& v);
  /// Closed segment conv{a, b}: n-1 equations and 2 inequalities (a != b).
  static HPolyhedron segment(const Vector& a, const Vector& b);
  /// conv{e_1, ..., e_n}: x >= 0 and sum x = 1.
  static HPolyhedron standard_simplex(std::size_t n, Backend backend = Backend::rational);
  /// [lo, hi]^n.
  static HPolyhedron box(std::size_t n, const Scalar& lo, const Scalar& hi);

  std::size_t dim() const { return dim_; }
  Backend backend() const { return backend_; }
  std::size_t num_inequalities() const { return inequalities_.size(); }
  std::size_t num_equations() const { return equations_.size(); }
  const std::vector<LinearConstraint>& inequalities() const { return inequalities_; }
  const std::vector<LinearConstraint>& equations() const { return equations_; }

  void add_inequality(Vector coeffs, Scalar rhs);
  void add_equation(Vector coeffs, Scalar rhs);

  Matrix inequality_matrix() const;
  Matrix equation_matrix() const;

  /// Direct substitution check (tolerance applies in float mode only).
  bool contains(const Vector& x, double tol = kDefaultTolerance) const;

 private:
  void check_row(const Vector& coeffs, const Scalar& rhs) const;

  std::size_t dim_ = 0;
  Backend backend_ = Backend::rational;
  std::vector<LinearConstraint> inequalities_;
  std::vector<LinearConstraint> equations_;
};

/// A finite point list; may contain non-extreme points.
struct VPolytope {
  std::size_t dim = 0;
  std::vector<Vector> vertices;

  VPolytope() = default;
  VPolytope(std::size_t d, std::vector<Vector> points);
  Backend backend() const;
};

/// x -> M x + t.
class AffineMap {
 public:
  AffineMap() = default;
  AffineMap(Matrix linear, Vector offset);

  static AffineMap identity(std::size_t n, Backend backend);

  std::size_t in_dim() const { return linear_.cols(); }
  std::size_t out_dim() const { return linear_.rows(); }
  Backend backend() const { return linear_.backend(); }
  const Matrix& linear() const { return linear_; }
  const Vector& offset() const { return offset_; }

  Vector apply(const Vector& x) const;

 private:
  Matrix linear_;
  Vector offset_;
};

/// outer ∘ inner.
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

/// Halfspace {x : <a, x> <= beta} whose boundary hyperplane is reflected at.
/// (a, beta) and (λa, λbeta) with λ > 0 describe the same relation.
struct ReflectionSpec {
  Vector normal;
  Scalar offset;

  std::size_t dim() const { return normal.size(); }
};

/**
 * Non-empty polyhedron R in R^n x R^m of type (n, m). The first n body
 * coordinates are x, the last m are y.
 *
 * `generators` lists affine maps whose images span each fiber (when known).
 * `reflection` records the halfspace of relations built from one.
 */
struct PolyhedralRelation {
  std::size_t n = 0;
  std::size_t m = 0;
  HPolyhedron body;
  std::optional<std::vector<AffineMap>> generators;
  std::optional<ReflectionSpec> reflection;
  std::string label;

  /// {y : (x, y) in body}, a polyhedron in R^m.
  HPolyhedron fiber(const Vector& x) const;
};

/// Relation {(x, y) : y = f(x)} with generators {f}.
PolyhedralRelation graph_relation(const AffineMap& f, std::string label = "graph");

struct Deltas {
  std::size_t delta1 = 0;  // dim ker of the y-block of aff(R)
  std::size_t delta2 = 0;  // dim ker of the x-block of aff(R)
};

/// Fiber dimensions, with aff(R) taken as the equation subsystem of the body.
/// That subsystem is the affine hull for every relation this library builds;
/// relations with implicit equations hidden among their inequalities get
/// upper bounds instead.
Deltas deltas(const PolyhedralRelation& rel, double tol = kDefaultTolerance);

/// Size accounting of an extended formulation.
struct Ledger {
  std::size_t raw_variables = 0;
  std::size_t inequalities = 0;
  std::size_t equations = 0;
  std::size_t base_inequalities = 0;
  std::size_t base_equations = 0;
  std::size_t relations = 0;
  /// min{k_0 + Σ δ1(R_i), k_r + Σ δ2(R_i)}.
  std::size_t reduced_variable_bound = 0;
  /// Set once equations were eliminated.
  std::optional<std::size_t> reduced_variables;
  /// Construction-specific counts, e.g. "cube_dimension".
  std::map<std::string, std::size_t> extras;

  friend bool operator==(const Ledger&, const Ledger&) = default;
};

/// Q together with the projection onto the last block.
struct ExtendedFormulation {
  HPolyhedron q;
  AffineMap projection;
  Ledger ledger;
  std::vector<std::size_t> blocks;          // k_0, ..., k_r (raw layout)
  std::vector<std::string> variable_names;  // z{i}_{j}, one per column of q
  std::string label;

  std::size_t output_dim() const { return projection.out_dim(); }
  Backend backend() const { return q.backend(); }
};

/// "z{block}_{coordinate}".
std::string block_variable_name(std::size_t block, std::size_t coordinate);

struct ComposeOptions {
  /// LP-check that every relation body is non-empty.
  bool check_nonempty = true;
  std::string label;
};

/**
 * Builds Q = {(z0, ..., zr) : z0 in P, (z_{i-1}, z_i) in R_i} with the
 * projection onto z_r. With no relations, returns P with the identity.
 *
 * Throws TypeChainMismatch when dim(P) != k_0 or R_i.m != R_{i+1}.n, and
 * EmptyPolyhedron when a relation body is empty.
 */
ExtendedFormulation compose_extension(const HPolyhedron& base,
                                      const std::vector<PolyhedralRelation>& relations,
                                      const ComposeOptions& options = {});

/**
 * Solves the equation system of Q, substitutes it into the inequalities and
 * the projection, and returns a formulation over the free variables only.
 * Inequality count is unchanged; the reduced count lands in the ledger.
 *
 * Throws EmptyPolyhedron when the equations are inconsistent.
 */
ExtendedFormulation eliminate_equations(const ExtendedFormulation& ef,
                                        double tol = kDefaultTolerance);

/// y in π(Q)? Exact in rational mode. Float LP trouble raises NumericError.
bool point_in_projection(const ExtendedFormulation& ef, const Vector& y,
                         double tol = kDefaultTolerance);

}  // namespace reflekt
