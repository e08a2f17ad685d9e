#include "reflekt/polyhedra.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "reflekt/errors.hpp"
#include "reflekt/lp.hpp"

namespace reflekt {

// ---------------------------------------------------------------------------
// HPolyhedron

HPolyhedron HPolyhedron::point(const Vector& v) {
  const Backend backend = common_backend(v);
  HPolyhedron p(v.size(), backend);
  for (std::size_t i = 0; i < v.size(); ++i) p.add_equation(unit_vector(v.size(), i, backend), v[i]);
  return p;
}

HPolyhedron HPolyhedron::segment(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("segment endpoints differ in dimension");
  const Backend backend = common_backend(a);
  Vector dir = subtract(b, a);
  Matrix complement = orthogonal_complement_basis(dir);
  HPolyhedron p(a.size(), backend);
  for (std::size_t r = 0; r < complement.rows(); ++r) {
    Vector row = complement.row_vector(r);
    Scalar rhs = dot(row, a);
    p.add_equation(std::move(row), std::move(rhs));
  }
  p.add_inequality(scale(dir, Scalar::integer(-1, backend)), -dot(dir, a));
  p.add_inequality(dir, dot(dir, b));
  return p;
}

HPolyhedron HPolyhedron::standard_simplex(std::size_t n, Backend backend) {
  HPolyhedron p(n, backend);
  for (std::size_t i = 0; i < n; ++i) {
    p.add_inequality(scale(unit_vector(n, i, backend), Scalar::integer(-1, backend)),
                     Scalar::zero(backend));
  }
  p.add_equation(Vector(n, Scalar::one(backend)), Scalar::one(backend));
  return p;
}

HPolyhedron HPolyhedron::box(std::size_t n, const Scalar& lo, const Scalar& hi) {
  const Backend backend = lo.backend();
  HPolyhedron p(n, backend);
  for (std::size_t i = 0; i < n; ++i) {
    p.add_inequality(scale(unit_vector(n, i, backend), Scalar::integer(-1, backend)), -lo);
    p.add_inequality(unit_vector(n, i, backend), hi);
  }
  return p;
}

void HPolyhedron::check_row(const Vector& coeffs, const Scalar& rhs) const {
  if (coeffs.size() != dim_) {
    throw DimensionError("constraint has " + std::to_string(coeffs.size()) +
                         " coefficients, polyhedron dimension is " + std::to_string(dim_));
  }
  if (common_backend(coeffs, backend_) != backend_ || rhs.backend() != backend_) {
    throw BackendMismatch("constraint backend differs from polyhedron backend");
  }
}

void HPolyhedron::add_inequality(Vector coeffs, Scalar rhs) {
  check_row(coeffs, rhs);
  inequalities_.push_back({std::move(coeffs), std::move(rhs)});
}

void HPolyhedron::add_equation(Vector coeffs, Scalar rhs) {
  check_row(coeffs, rhs);
  equations_.push_back({std::move(coeffs), std::move(rhs)});
}

Matrix HPolyhedron::inequality_matrix() const {
  Matrix m(0, dim_, backend_);
  for (const auto& c : inequalities_) m.append_row(c.coeffs);
  return m;
}

Matrix HPolyhedron::equation_matrix() const {
  Matrix m(0, dim_, backend_);
  for (const auto& c : equations_) m.append_row(c.coeffs);
  return m;
}

bool HPolyhedron::contains(const Vector& x, double tol) const {
  if (x.size() != dim_) throw DimensionError("contains: point dimension mismatch");
  for (const auto& c : inequalities_) {
    if (!leq(dot(c.coeffs, x), c.rhs, tol)) return false;
  }
  for (const auto& c : equations_) {
    if (compare(dot(c.coeffs, x), c.rhs, tol) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// VPolytope, AffineMap

VPolytope::VPolytope(std::size_t d, std::vector<Vector> points) : dim(d), vertices(std::move(points)) {
  if (vertices.empty()) throw InvalidArgument("a V-polytope needs at least one point");
  Backend b = common_backend(vertices.front());
  for (const auto& v : vertices) {
    if (v.size() != dim) throw DimensionError("V-polytope point dimension mismatch");
    if (common_backend(v, b) != b) throw BackendMismatch("V-polytope mixes backends");
  }
}

Backend VPolytope::backend() const {
  return vertices.empty() ? Backend::rational : common_backend(vertices.front());
}

AffineMap::AffineMap(Matrix linear, Vector offset) : linear_(std::move(linear)), offset_(std::move(offset)) {
  if (offset_.size() != linear_.rows()) throw DimensionError("affine map offset size mismatch");
  if (common_backend(offset_, linear_.backend()) != linear_.backend()) {
    throw BackendMismatch("affine map mixes backends");
  }
}

AffineMap AffineMap::identity(std::size_t n, Backend backend) {
  return AffineMap(Matrix::identity(n, backend), zeros(n, backend));
}

Vector AffineMap::apply(const Vector& x) const {
  if (x.size() != in_dim()) throw DimensionError("affine map applied to wrong dimension");
  return add(linear_ * x, offset_);
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
  if (outer.in_dim() != inner.out_dim()) throw DimensionError("affine map composition mismatch");
  return AffineMap(outer.linear() * inner.linear(), outer.apply(inner.offset()));
}

// ---------------------------------------------------------------------------
// Relations

HPolyhedron PolyhedralRelation::fiber(const Vector& x) const {
  if (x.size() != n) throw DimensionError("fiber: point dimension differs from relation input");
  HPolyhedron out(m, body.backend());
  auto restrict_row = [&](const LinearConstraint& c) {
    std::span<const Scalar> all(c.coeffs);
    Scalar rhs = c.rhs - dot(all.first(n), x);
    auto y_part = all.subspan(n);
    return LinearConstraint{Vector(y_part.begin(), y_part.end()), std::move(rhs)};
  };
  for (const auto& c : body.inequalities()) {
    auto r = restrict_row(c);
    out.add_inequality(std::move(r.coeffs), std::move(r.rhs));
  }
  for (const auto& c : body.equations()) {
    auto r = restrict_row(c);
    out.add_equation(std::move(r.coeffs), std::move(r.rhs));
  }
  return out;
}

PolyhedralRelation graph_relation(const AffineMap& f, std::string label) {
  const std::size_t n = f.in_dim();
  const std::size_t m = f.out_dim();
  const Backend backend = f.backend();
  PolyhedralRelation rel;
  rel.n = n;
  rel.m = m;
  rel.body = HPolyhedron(n + m, backend);
  for (std::size_t i = 0; i < m; ++i) {
    Vector row = zeros(n + m, backend);
    for (std::size_t j = 0; j < n; ++j) row[j] = -f.linear()(i, j);
    row[n + i] = Scalar::one(backend);
    rel.body.add_equation(std::move(row), f.offset()[i]);
  }
  rel.generators = std::vector<AffineMap>{f};
  rel.label = std::move(label);
  return rel;
}

Deltas deltas(const PolyhedralRelation& rel, double tol) {
  Matrix eqs = rel.body.equation_matrix();
  Matrix x_block = eqs.column_block(0, rel.n);
  Matrix y_block = eqs.column_block(rel.n, rel.m);
  return {kernel_dim(y_block, tol), kernel_dim(x_block, tol)};
}

// ---------------------------------------------------------------------------
// Extended formulations

std::string block_variable_name(std::size_t block, std::size_t coordinate) {
  return "z" + std::to_string(block) + "_" + std::to_string(coordinate);
}

ExtendedFormulation compose_extension(const HPolyhedron& base,
                                      const std::vector<PolyhedralRelation>& relations,
                                      const ComposeOptions& options) {
  const Backend backend = base.backend();
  std::vector<std::size_t> blocks{base.dim()};
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const auto& rel = relations[i];
    if (rel.n != blocks.back()) {
      throw TypeChainMismatch("relation " + std::to_string(i + 1) + " (" + rel.label +
                              ") has input dimension " + std::to_string(rel.n) +
                              ", previous block has " + std::to_string(blocks.back()));
    }
    if (rel.body.dim() != rel.n + rel.m) {
      throw DimensionError("relation body dimension differs from n + m");
    }
    if (rel.body.backend() != backend) {
      throw BackendMismatch("relation " + std::to_string(i + 1) + " backend differs from base");
    }
    blocks.push_back(rel.m);
  }

  std::vector<std::size_t> offsets(blocks.size(), 0);
  for (std::size_t i = 1; i < blocks.size(); ++i) offsets[i] = offsets[i - 1] + blocks[i - 1];
  const std::size_t total = offsets.back() + blocks.back();

  ExtendedFormulation ef;
  ef.q = HPolyhedron(total, backend);
  ef.blocks = blocks;
  ef.label = options.label;

  auto place = [&](const LinearConstraint& c, std::size_t at) {
    Vector row = zeros(total, backend);
    std::copy(c.coeffs.begin(), c.coeffs.end(), row.begin() + static_cast<std::ptrdiff_t>(at));
    return row;
  };
  for (const auto& c : base.inequalities()) ef.q.add_inequality(place(c, 0), c.rhs);
  for (const auto& c : base.equations()) ef.q.add_equation(place(c, 0), c.rhs);

  std::size_t sum_delta1 = 0;
  std::size_t sum_delta2 = 0;
  std::size_t rel_ineqs = 0;
  std::size_t rel_eqs = 0;
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const auto& rel = relations[i];
    if (options.check_nonempty && !lp::feasible(rel.body)) {
      throw EmptyPolyhedron("relation " + std::to_string(i + 1) + " (" + rel.label + ") is empty");
    }
    // x occupies block i, y block i + 1; relation rows are contiguous over both.
    for (const auto& c : rel.body.inequalities()) ef.q.add_inequality(place(c, offsets[i]), c.rhs);
    for (const auto& c : rel.body.equations()) ef.q.add_equation(place(c, offsets[i]), c.rhs);
    rel_ineqs += rel.body.num_inequalities();
    rel_eqs += rel.body.num_equations();
    Deltas d = deltas(rel);
    sum_delta1 += d.delta1;
    sum_delta2 += d.delta2;
  }

  const std::size_t last = blocks.size() - 1;
  Matrix select(blocks[last], total, backend);
  for (std::size_t j = 0; j < blocks[last]; ++j) select(j, offsets[last] + j) = Scalar::one(backend);
  ef.projection = AffineMap(std::move(select), zeros(blocks[last], backend));

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t j = 0; j < blocks[b]; ++j) ef.variable_names.push_back(block_variable_name(b, j));
  }

  Ledger& ledger = ef.ledger;
  ledger.raw_variables = total;
  ledger.base_inequalities = base.num_inequalities();
  ledger.base_equations = base.num_equations();
  ledger.inequalities = ledger.base_inequalities + rel_ineqs;
  ledger.equations = ledger.base_equations + rel_eqs;
  ledger.relations = relations.size();
  ledger.reduced_variable_bound =
      std::min(blocks.front() + sum_delta1, blocks.back() + sum_delta2);
  return ef;
}

ExtendedFormulation eliminate_equations(const ExtendedFormulation& ef, double tol) {
  const HPolyhedron& q = ef.q;
  const Backend backend = q.backend();
  const std::size_t dim = q.dim();
  if (q.num_equations() == 0) {
    ExtendedFormulation out = ef;
    out.ledger.reduced_variables = dim;
    return out;
  }

  Matrix augmented(0, dim + 1, backend);
  for (const auto& c : q.equations()) {
    Vector row = c.coeffs;
    row.push_back(c.rhs);
    augmented.append_row(row);
  }
  RrefResult red = rref(augmented, tol);
  if (!red.pivots.empty() && red.pivots.back() == dim) {
    throw EmptyPolyhedron("equation system of the formulation is inconsistent");
  }

  std::vector<bool> is_pivot(dim, false);
  for (std::size_t p : red.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < dim; ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  const std::size_t k = free_cols.size();

  // z = base_point + basis * u
  Vector base_point = zeros(dim, backend);
  Matrix basis(dim, k, backend);
  for (std::size_t f = 0; f < k; ++f) basis(free_cols[f], f) = Scalar::one(backend);
  for (std::size_t r = 0; r < red.pivots.size(); ++r) {
    const std::size_t p = red.pivots[r];
    base_point[p] = red.reduced(r, dim);
    for (std::size_t f = 0; f < k; ++f) basis(p, f) = -red.reduced(r, free_cols[f]);
  }

  ExtendedFormulation out;
  out.q = HPolyhedron(k, backend);
  for (const auto& c : q.inequalities()) {
    Vector row = zeros(k, backend);
    for (std::size_t j = 0; j < dim; ++j) {
      if (c.coeffs[j].sign(0.0) == 0) continue;
      for (std::size_t f = 0; f < k; ++f) {
        if (basis(j, f).sign(0.0) != 0) row[f].add_mul(c.coeffs[j], basis(j, f));
      }
    }
    if (backend == Backend::floating) {
      for (auto& v : row) {
        if (v.is_zero(tol)) v = Scalar::zero(backend);
      }
    }
    out.q.add_inequality(std::move(row), c.rhs - dot(c.coeffs, base_point));
  }
  out.projection = AffineMap(ef.projection.linear() * basis, ef.projection.apply(base_point));
  out.blocks = ef.blocks;
  out.label = ef.label;
  for (std::size_t f : free_cols) {
    out.variable_names.push_back(f < ef.variable_names.size() ? ef.variable_names[f]
                                                              : "u" + std::to_string(f));
  }
  out.ledger = ef.ledger;
  out.ledger.equations = 0;
  out.ledger.reduced_variables = k;
  if (k > ef.ledger.reduced_variable_bound && ef.ledger.relations > 0) {
    throw NumericError("reduced variable count " + std::to_string(k) +
                       " exceeds the fiber-dimension bound " +
                       std::to_string(ef.ledger.reduced_variable_bound));
  }
  return out;
}

bool point_in_projection(const ExtendedFormulation& ef, const Vector& y, double tol) {
  if (y.size() != ef.output_dim()) {
    throw DimensionError("point has dimension " + std::to_string(y.size()) +
                         ", projection outputs " + std::to_string(ef.output_dim()));
  }
  HPolyhedron pinned = ef.q;
  const Matrix& m = ef.projection.linear();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    pinned.add_equation(m.row_vector(i), y[i] - ef.projection.offset()[i]);
  }
  lp::Options options;
  options.tolerance = tol;
  return lp::feasible(pinned, {}, options);
}

}  // namespace reflekt
