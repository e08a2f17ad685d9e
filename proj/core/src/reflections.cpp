#include "reflekt/reflections.hpp"

#include <algorithm>
#include <string>

#include "reflekt/errors.hpp"

namespace reflekt {

namespace {

void check_spec(const ReflectionSpec& spec) {
  if (spec.normal.empty()) throw InvalidArgument("reflection normal is empty");
  if (spec.offset.backend() != common_backend(spec.normal)) {
    throw BackendMismatch("reflection offset and normal use different backends");
  }
  bool nonzero = std::any_of(spec.normal.begin(), spec.normal.end(),
                             [](const Scalar& v) { return v.sign(0.0) != 0; });
  if (!nonzero) throw InvalidArgument("reflection normal is the zero vector");
}

void check_index(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) {
    throw InvalidArgument("index " + std::to_string(k) + " out of range 1.." + std::to_string(n));
  }
}

}  // namespace

Vector reflect_point(const ReflectionSpec& spec, const Vector& x) {
  check_spec(spec);
  if (x.size() != spec.dim()) throw DimensionError("reflect_point: dimension mismatch");
  Scalar norm2 = dot(spec.normal, spec.normal);
  Scalar factor = Scalar::integer(2, spec.offset.backend()) * (spec.offset - dot(spec.normal, x));
  factor /= norm2;
  Vector out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i].add_mul(factor, spec.normal[i]);
  return out;
}

bool in_halfspace(const ReflectionSpec& spec, const Vector& y, double tol) {
  if (y.size() != spec.dim()) throw DimensionError("in_halfspace: dimension mismatch");
  return leq(dot(spec.normal, y), spec.offset, tol);
}

PolyhedralRelation reflection_relation(const ReflectionSpec& spec, std::string label) {
  check_spec(spec);
  const std::size_t n = spec.dim();
  const Backend backend = spec.offset.backend();

  PolyhedralRelation rel;
  rel.n = n;
  rel.m = n;
  rel.body = HPolyhedron(2 * n, backend);

  Matrix complement = orthogonal_complement_basis(spec.normal);
  for (std::size_t r = 0; r < complement.rows(); ++r) {
    Vector row = zeros(2 * n, backend);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = -complement(r, j);
      row[n + j] = complement(r, j);
    }
    rel.body.add_equation(std::move(row), Scalar::zero(backend));
  }

  Vector lower = zeros(2 * n, backend);
  Vector upper = zeros(2 * n, backend);
  for (std::size_t j = 0; j < n; ++j) {
    lower[j] = spec.normal[j];
    lower[n + j] = -spec.normal[j];
    upper[j] = spec.normal[j];
    upper[n + j] = spec.normal[j];
  }
  rel.body.add_inequality(std::move(lower), Scalar::zero(backend));
  rel.body.add_inequality(std::move(upper), Scalar::integer(2, backend) * spec.offset);

  // Reflection as an affine map: x - (2 <a,x> / <a,a>) a + (2 beta / <a,a>) a.
  Scalar norm2 = dot(spec.normal, spec.normal);
  Matrix linear = Matrix::identity(n, backend);
  Vector offset = zeros(n, backend);
  Scalar two = Scalar::integer(2, backend);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      linear(i, j) -= two * spec.normal[i] * spec.normal[j] / norm2;
    }
    offset[i] = two * spec.offset * spec.normal[i] / norm2;
  }
  rel.generators = std::vector<AffineMap>{AffineMap::identity(n, backend),
                                          AffineMap(std::move(linear), std::move(offset))};
  rel.reflection = spec;
  rel.label = label.empty() ? "reflection" : std::move(label);
  return rel;
}

Vector canonical_preimage(const ReflectionSpec& spec, const Vector& y, double tol) {
  return in_halfspace(spec, y, tol) ? y : reflect_point(spec, y);
}

ReflectionSpec sign_spec(std::size_t k, std::size_t n, Backend backend) {
  check_index(k, n);
  return {scale(unit_vector(n, k - 1, backend), Scalar::integer(-1, backend)),
          Scalar::zero(backend)};
}

ReflectionSpec transposition_spec(std::size_t k, std::size_t l, std::size_t n, Backend backend) {
  check_index(k, n);
  check_index(l, n);
  if (k == l) throw InvalidArgument("transposition needs two distinct indices");
  Vector a = zeros(n, backend);
  a[k - 1] = Scalar::one(backend);
  a[l - 1] = Scalar::integer(-1, backend);
  return {std::move(a), Scalar::zero(backend)};
}

PolyhedralRelation sign_relation(std::size_t k, std::size_t n, Backend backend) {
  return reflection_relation(sign_spec(k, n, backend), "S" + std::to_string(k));
}

PolyhedralRelation transposition_relation(std::size_t k, std::size_t l, std::size_t n,
                                          Backend backend) {
  return reflection_relation(transposition_spec(k, l, n, backend),
                             "T" + std::to_string(k) + "," + std::to_string(l));
}

std::pair<PolyhedralRelation, PolyhedralRelation> even_sign_pair(std::size_t k, std::size_t l,
                                                                 std::size_t n, Backend backend) {
  ReflectionSpec first = transposition_spec(k, l, n, backend);
  Vector b = zeros(n, backend);
  b[k - 1] = Scalar::integer(-1, backend);
  b[l - 1] = Scalar::integer(-1, backend);
  ReflectionSpec second{std::move(b), Scalar::zero(backend)};
  const std::string tag = std::to_string(k) + "," + std::to_string(l);
  return {reflection_relation(first, "E" + tag + "a"), reflection_relation(second, "E" + tag + "b")};
}

Vector apply_preimage_chain(std::span<const ReflectionSpec> specs, const Vector& y, double tol) {
  Vector out = y;
  for (auto it = specs.rbegin(); it != specs.rend(); ++it) {
    if (it->dim() != out.size()) throw DimensionError("preimage chain: dimension mismatch");
    out = canonical_preimage(*it, out, tol);
  }
  return out;
}

Vector apply_preimage_chain(std::span<const PolyhedralRelation> relations, const Vector& y,
                            double tol) {
  std::vector<ReflectionSpec> specs;
  specs.reserve(relations.size());
  for (const auto& rel : relations) {
    if (!rel.reflection) {
      throw InvalidArgument("relation '" + rel.label + "' is not a reflection relation");
    }
    specs.push_back(*rel.reflection);
  }
  return apply_preimage_chain(specs, y, tol);
}

Vector sort_vec(const Vector& y) {
  Vector out = y;
  std::stable_sort(out.begin(), out.end(), exact_less);
  return out;
}

Vector abs_vec(const Vector& y) {
  Vector out;
  out.reserve(y.size());
  for (const auto& v : y) out.push_back(v.abs());
  return out;
}

Vector sortabs_vec(const Vector& y) { return sort_vec(abs_vec(y)); }

Vector dn_canonical(const Vector& y) {
  std::size_t negatives = 0;
  for (const auto& v : y) negatives += v.sign(0.0) < 0 ? 1 : 0;
  Vector out = sortabs_vec(y);
  if (negatives % 2 == 1 && !out.empty()) out.front() = -out.front();
  return out;
}

}  // namespace reflekt
