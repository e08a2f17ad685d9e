#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "reflekt/polyhedra.hpp"

namespace reflekt::lp {

enum class Sense { maximize, minimize };
enum class Status { optimal, infeasible, unbounded };

struct Problem {
  HPolyhedron constraints;  // all variables free in sign
  Vector objective;
  Sense sense = Sense::maximize;
};

struct Result {
  Status status = Status::infeasible;
  std::optional<Scalar> value;  // set when optimal
  Vector point;                 // set when optimal
  std::size_t iterations = 0;
};

struct Options {
  double tolerance = kDefaultTolerance;
  std::size_t max_iterations = 200000;
};

/**
 * Dense two-phase tableau simplex.
 *
 * Rational mode uses Bland's rule and never rounds; float mode uses the
 * largest-coefficient rule (falling back to Bland after a run of degenerate
 * pivots) and raises NumericError when the final point violates a constraint
 * by more than 1e-6 or the iteration cap is hit. Equations enter phase 1 with
 * their own artificial variable.
 */
Result solve(const Problem& problem, const Options& options = {});

/// Same as solve() without copying the constraint system.
Result optimize(const HPolyhedron& constraints, const Vector& objective, Sense sense,
                const Options& options = {});

struct Pin {
  std::size_t index;  // 0-based coordinate
  Scalar value;
};

/// Phase-1 feasibility of q with the pinned coordinates fixed.
bool feasible(const HPolyhedron& q, std::span<const Pin> pins = {}, const Options& options = {});

/// y in conv(V): feasibility of λ >= 0, Σλ = 1, Σ λ_i v_i = y.
bool in_hull(const Vector& y, const VPolytope& polytope, const Options& options = {});

}  // namespace reflekt::lp
