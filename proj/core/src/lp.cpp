#include "reflekt/lp.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "reflekt/errors.hpp"

namespace reflekt::lp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kDegenerateRunBeforeBland = 50;
constexpr double kFloatCleanup = 1e-13;
constexpr double kFloatResidual = 1e-6;

/**
 * Standard-form tableau over columns [x+ | x- | slacks | artificials].
 * Minimizes; reduced costs live in `cost`, the current objective in `value`.
 */
class Tableau {
 public:
  Tableau(const HPolyhedron& q, const Options& options)
      : backend_(q.backend()),
        exact_(backend_ == Backend::rational),
        tol_(exact_ ? 0.0 : options.tolerance),
        max_iterations_(options.max_iterations),
        n_(q.dim()) {
    const std::size_t m_ineq = q.num_inequalities();
    const std::size_t m_eq = q.num_equations();
    slack_begin_ = 2 * n_;
    art_begin_ = slack_begin_ + m_ineq;

    std::vector<bool> needs_art;
    auto push_row = [&](const LinearConstraint& c, std::size_t slack) {
      Vector row = zeros(art_begin_, backend_);
      for (std::size_t j = 0; j < n_; ++j) {
        row[j] = c.coeffs[j];
        row[n_ + j] = -c.coeffs[j];
      }
      if (slack != kNone) row[slack] = Scalar::one(backend_);
      Scalar rhs = c.rhs;
      bool negate = rhs.sign(0.0) < 0;
      if (negate) {
        for (auto& v : row) v = -v;
        rhs = -rhs;
      }
      rows_.push_back(std::move(row));
      rhs_.push_back(std::move(rhs));
      bool art = slack == kNone || negate;
      needs_art.push_back(art);
      basis_.push_back(art ? kNone : slack);
    };
    for (std::size_t i = 0; i < m_ineq; ++i) push_row(q.inequalities()[i], slack_begin_ + i);
    for (std::size_t i = 0; i < m_eq; ++i) push_row(q.equations()[i], kNone);

    std::size_t art_count = 0;
    for (bool a : needs_art) art_count += a ? 1 : 0;
    width_ = art_begin_ + art_count;
    std::size_t next_art = art_begin_;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      rows_[r].resize(width_, Scalar::zero(backend_));
      if (needs_art[r]) {
        rows_[r][next_art] = Scalar::one(backend_);
        basis_[r] = next_art++;
      }
    }
    allowed_end_ = art_begin_;
  }

  std::size_t iterations() const { return iterations_; }

  /// Phase 1. Returns false when the system is infeasible.
  bool find_feasible_basis() {
    if (width_ == art_begin_) return true;
    cost_.assign(width_, Scalar::zero(backend_));
    value_ = Scalar::zero(backend_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] < art_begin_) continue;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (rows_[r][j].sign(0.0) != 0) cost_[j] -= rows_[r][j];
      }
      value_ += rhs_[r];
    }
    if (run() != Status::optimal) {
      throw NumericError("phase 1 reported an unbounded objective");
    }
    if (value_.sign(exact_ ? 0.0 : tol_) > 0) return false;

    // Pivot remaining zero-level artificials out, dropping redundant rows.
    for (std::size_t r = 0; r < rows_.size();) {
      if (basis_[r] < art_begin_) {
        ++r;
        continue;
      }
      std::size_t col = kNone;
      double best = 0.0;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (rows_[r][j].sign(tol_) == 0) continue;
        if (exact_) {
          col = j;
          break;
        }
        double v = std::fabs(rows_[r][j].to_double());
        if (v > best) {
          best = v;
          col = j;
        }
      }
      if (col == kNone) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      pivot(r, col);
      ++r;
    }
    return true;
  }

  /// Phase 2 on the original variables.
  Status optimize(const Vector& objective, Sense sense) {
    cost_.assign(width_, Scalar::zero(backend_));
    for (std::size_t j = 0; j < n_; ++j) {
      Scalar c = sense == Sense::minimize ? objective[j] : -objective[j];
      cost_[n_ + j] = -c;
      cost_[j] = std::move(c);
    }
    value_ = Scalar::zero(backend_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Scalar cb = cost_[basis_[r]];
      if (cb.sign(0.0) == 0) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (rows_[r][j].sign(0.0) != 0) cost_[j].sub_mul(cb, rows_[r][j]);
      }
      value_.add_mul(cb, rhs_[r]);
    }
    return run();
  }

  Vector solution() const {
    Vector full = zeros(width_, backend_);
    for (std::size_t r = 0; r < rows_.size(); ++r) full[basis_[r]] = rhs_[r];
    Vector x = zeros(n_, backend_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = full[j] - full[n_ + j];
    return x;
  }

 private:
  Status run() {
    std::size_t degenerate_run = 0;
    while (true) {
      if (iterations_ >= max_iterations_) {
        throw NumericError("simplex iteration cap (" + std::to_string(max_iterations_) +
                           ") reached");
      }
      const bool bland = exact_ || degenerate_run >= kDegenerateRunBeforeBland;
      std::size_t enter = kNone;
      double most_negative = 0.0;
      for (std::size_t j = 0; j < allowed_end_; ++j) {
        if (cost_[j].sign(tol_) >= 0) continue;
        if (bland) {
          enter = j;
          break;
        }
        double v = cost_[j].to_double();
        if (v < most_negative) {
          most_negative = v;
          enter = j;
        }
      }
      if (enter == kNone) return Status::optimal;

      std::size_t leave = kNone;
      Scalar best_ratio;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Scalar& a = rows_[r][enter];
        if (a.sign(tol_) <= 0) continue;
        Scalar ratio = rhs_[r] / a;
        if (leave == kNone) {
          leave = r;
          best_ratio = std::move(ratio);
          continue;
        }
        int c = compare(ratio, best_ratio, tol_);
        if (c < 0 || (c == 0 && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == kNone) return Status::unbounded;

      degenerate_run = best_ratio.sign(tol_) == 0 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
      ++iterations_;
    }
  }

  void pivot(std::size_t r, std::size_t s) {
    Vector& prow = rows_[r];
    Scalar inv = Scalar::one(backend_) / prow[s];
    nonzero_.clear();
    for (std::size_t j = 0; j < width_; ++j) {
      if (prow[j].sign(0.0) == 0) continue;
      prow[j] *= inv;
      nonzero_.push_back(j);
    }
    prow[s] = Scalar::one(backend_);
    rhs_[r] *= inv;

    auto eliminate = [&](Vector& row, Scalar* rhs) {
      Scalar factor = row[s];
      if (factor.sign(0.0) == 0) return;
      for (std::size_t j : nonzero_) row[j].sub_mul(factor, prow[j]);
      row[s] = Scalar::zero(backend_);
      if (rhs) rhs->sub_mul(factor, rhs_[r]);
      if (!exact_) {
        for (std::size_t j : nonzero_) {
          if (std::fabs(row[j].to_double()) < kFloatCleanup) row[j] = Scalar::zero(backend_);
        }
      }
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      eliminate(rows_[i], &rhs_[i]);
      if (!exact_ && rhs_[i].to_double() < 0.0 && rhs_[i].to_double() > -kFloatCleanup) {
        rhs_[i] = Scalar::zero(backend_);
      }
    }
    if (!cost_.empty()) {
      Scalar factor = cost_[s];
      if (factor.sign(0.0) != 0) {
        for (std::size_t j : nonzero_) cost_[j].sub_mul(factor, prow[j]);
        cost_[s] = Scalar::zero(backend_);
        value_.add_mul(factor, rhs_[r]);
      }
    }
    basis_[r] = s;
  }

  Backend backend_;
  bool exact_;
  double tol_;
  std::size_t max_iterations_;
  std::size_t n_;
  std::size_t slack_begin_ = 0;
  std::size_t art_begin_ = 0;
  std::size_t width_ = 0;
  std::size_t allowed_end_ = 0;
  std::vector<Vector> rows_;
  Vector rhs_;
  std::vector<std::size_t> basis_;
  Vector cost_;
  Scalar value_;
  std::vector<std::size_t> nonzero_;
  std::size_t iterations_ = 0;
};

void check_float_point(const HPolyhedron& q, const Vector& x) {
  auto residual = [&](const LinearConstraint& c) {
    return dot(c.coeffs, x).to_double() - c.rhs.to_double();
  };
  for (const auto& c : q.inequalities()) {
    double r = residual(c);
    if (r > kFloatResidual * (1.0 + std::fabs(c.rhs.to_double()))) {
      throw NumericError("float simplex point violates an inequality by " + std::to_string(r));
    }
  }
  for (const auto& c : q.equations()) {
    double r = std::fabs(residual(c));
    if (r > kFloatResidual * (1.0 + std::fabs(c.rhs.to_double()))) {
      throw NumericError("float simplex point violates an equation by " + std::to_string(r));
    }
  }
}

}  // namespace

Result optimize(const HPolyhedron& constraints, const Vector& objective, Sense sense,
                const Options& options) {
  if (objective.size() != constraints.dim()) {
    throw DimensionError("objective has " + std::to_string(objective.size()) +
                         " entries, constraints have dimension " +
                         std::to_string(constraints.dim()));
  }
  if (common_backend(objective, constraints.backend()) != constraints.backend()) {
    throw BackendMismatch("objective backend differs from constraint backend");
  }
  Tableau tableau(constraints, options);
  Result result;
  if (!tableau.find_feasible_basis()) {
    result.status = Status::infeasible;
    result.iterations = tableau.iterations();
    return result;
  }
  result.status = tableau.optimize(objective, sense);
  result.iterations = tableau.iterations();
  if (result.status != Status::optimal) return result;
  result.point = tableau.solution();
  if (constraints.backend() == Backend::floating) check_float_point(constraints, result.point);
  result.value = constraints.dim() == 0 ? Scalar::zero(constraints.backend())
                                        : dot(objective, result.point);
  return result;
}

Result solve(const Problem& problem, const Options& options) {
  return optimize(problem.constraints, problem.objective, problem.sense, options);
}

bool feasible(const HPolyhedron& q, std::span<const Pin> pins, const Options& options) {
  if (pins.empty()) {
    Tableau tableau(q, options);
    return tableau.find_feasible_basis();
  }
  HPolyhedron pinned = q;
  for (const auto& pin : pins) {
    if (pin.index >= q.dim()) throw DimensionError("pin index out of range");
    pinned.add_equation(unit_vector(q.dim(), pin.index, q.backend()), pin.value);
  }
  Tableau tableau(pinned, options);
  return tableau.find_feasible_basis();
}

bool in_hull(const Vector& y, const VPolytope& polytope, const Options& options) {
  if (y.size() != polytope.dim) throw DimensionError("in_hull: point and polytope dimensions differ");
  const Backend backend = polytope.backend();
  const std::size_t k = polytope.vertices.size();
  HPolyhedron lambda(k, backend);
  for (std::size_t i = 0; i < k; ++i) {
    lambda.add_inequality(scale(unit_vector(k, i, backend), Scalar::integer(-1, backend)),
                          Scalar::zero(backend));
  }
  lambda.add_equation(Vector(k, Scalar::one(backend)), Scalar::one(backend));
  for (std::size_t d = 0; d < polytope.dim; ++d) {
    Vector row;
    row.reserve(k);
    for (const auto& v : polytope.vertices) row.push_back(v[d]);
    lambda.add_equation(std::move(row), y[d]);
  }
  Tableau tableau(lambda, options);
  return tableau.find_feasible_basis();
}

}  // namespace reflekt::lp
