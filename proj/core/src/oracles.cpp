#include "reflekt/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <unordered_set>
#include <string>

#include "reflekt/errors.hpp"

namespace reflekt {

namespace {

constexpr double kBucket = 1e-9;

// Exact text for rationals, 1e-9 buckets for floats.
std::string key_of(const Vector& v) {
  std::string key;
  for (const auto& s : v) {
    if (s.is_rational()) {
      key += s.to_string();
    } else {
      key += std::to_string(std::llround(s.to_double() / kBucket));
    }
    key += ',';
  }
  return key;
}

void check_cap(std::size_t dim, std::size_t cap, const char* what) {
  if (dim > cap) {
    throw InvalidArgument(std::string(what) + ": dimension " + std::to_string(dim) +
                          " exceeds the enumeration cap " + std::to_string(cap));
  }
}

std::string join(const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].to_string();
  }
  return out;
}

std::vector<Vector> permutations(const Vector& v) {
  Vector cur = v;
  std::sort(cur.begin(), cur.end(), exact_less);
  std::vector<Vector> out;
  do {
    out.push_back(cur);
  } while (std::next_permutation(cur.begin(), cur.end(), exact_less));
  return out;
}

std::vector<Vector> with_signs(const std::vector<Vector>& points, bool even_only) {
  std::vector<Vector> out;
  for (const auto& p : points) {
    const std::uint32_t total = std::uint32_t{1} << p.size();
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      if (even_only && __builtin_popcount(mask) % 2 != 0) continue;
      Vector q = p;
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (mask >> i & 1U) q[i] = -q[i];
      }
      out.push_back(std::move(q));
    }
  }
  return out;
}

// Sorted depth profiles d_1 <= ... <= d_n with sum 2^-d_i = 1. Capacity is
// measured in units of 2^-(n-1), the deepest possible leaf.
void depth_profiles(std::size_t n, std::size_t left, std::uint64_t capacity, std::size_t min_depth,
                    Vector& current, std::vector<Vector>& out) {
  if (left == 0) {
    if (capacity == 0) out.push_back(current);
    return;
  }
  for (std::size_t d = min_depth; d <= n - 1; ++d) {
    const std::uint64_t unit = std::uint64_t{1} << (n - 1 - d);
    // Remaining leaves are at depth >= d, so each uses at most `unit`.
    if (unit * left < capacity) continue;
    if (unit > capacity) continue;
    current.push_back(Scalar(static_cast<long>(d)));
    depth_profiles(n, left - 1, capacity - unit, d, current, out);
    current.pop_back();
  }
}

}  // namespace

bool VertexSet::contains(const Vector& p) const {
  const std::string k = key_of(p);
  return std::any_of(points.begin(), points.end(),
                     [&](const Vector& q) { return q.size() == p.size() && key_of(q) == k; });
}

VertexLookup::VertexLookup(const VertexSet& set) : dim_(set.dim) {
  for (const auto& p : set.points) keys_.insert(key_of(p));
}

bool VertexLookup::contains(const Vector& p) const {
  return p.size() == dim_ && keys_.contains(key_of(p));
}

VertexSet make_vertex_set(std::size_t dim, const std::vector<Vector>& points, std::string label) {
  VertexSet out{dim, {}, std::move(label)};
  std::unordered_set<std::string> seen;
  for (const auto& p : points) {
    if (p.size() != dim) throw DimensionError("vertex set point dimension mismatch");
    if (seen.insert(key_of(p)).second) out.points.push_back(p);
  }
  return out;
}

VertexSet permutation_orbit(const Vector& v) {
  check_cap(v.size(), 8, "permutation_orbit");
  return make_vertex_set(v.size(), permutations(v), "permutation(" + join(v) + ")");
}

VertexSet signed_orbit(const Vector& v) {
  check_cap(v.size(), 6, "signed_orbit");
  return make_vertex_set(v.size(), with_signs(permutations(v), false), "signed(" + join(v) + ")");
}

VertexSet even_signed_orbit(const Vector& v) {
  check_cap(v.size(), 6, "even_signed_orbit");
  return make_vertex_set(v.size(), with_signs(permutations(v), true),
                         "even_signed(" + join(v) + ")");
}

VertexSet sign_orbit(const std::vector<Vector>& points) {
  if (points.empty()) throw InvalidArgument("sign_orbit needs at least one point");
  const std::size_t dim = points.front().size();
  check_cap(dim, 16, "sign_orbit");
  return make_vertex_set(dim, with_signs(points, false), "sign_orbit");
}

VertexSet mgon_orbit(std::size_t m) {
  if (m < 3) throw InvalidArgument("m-gon needs m >= 3");
  std::vector<Vector> pts;
  for (std::size_t k = 0; k < m; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    pts.push_back({Scalar::from_double(std::cos(phi)), Scalar::from_double(std::sin(phi))});
  }
  return make_vertex_set(2, pts, "mgon(" + std::to_string(m) + ")");
}

VertexSet i2_orbit(const std::vector<Vector>& points, std::size_t m) {
  if (m < 3) throw InvalidArgument("I2(m) needs m >= 3");
  std::vector<Vector> pts;
  for (const auto& p : points) {
    if (p.size() != 2) throw DimensionError("I2(m) acts on the plane");
    const double x = p[0].to_double();
    const double y = p[1].to_double();
    for (std::size_t k = 0; k < m; ++k) {
      const double rot = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
      pts.push_back({Scalar::from_double(std::cos(rot) * x - std::sin(rot) * y),
                     Scalar::from_double(std::sin(rot) * x + std::cos(rot) * y)});
      // Reflection at the line through the origin with angle k pi/m.
      pts.push_back({Scalar::from_double(std::cos(rot) * x + std::sin(rot) * y),
                     Scalar::from_double(std::sin(rot) * x - std::cos(rot) * y)});
    }
  }
  return make_vertex_set(2, pts, "i2(" + std::to_string(m) + ")");
}

VertexSet huffman_vectors(std::size_t n) {
  if (n < 2 || n > 9) throw InvalidArgument("huffman_vectors supports 2 <= n <= 9");
  std::vector<Vector> profiles;
  Vector current;
  depth_profiles(n, n, std::uint64_t{1} << (n - 1), 1, current, profiles);
  std::vector<Vector> pts;
  for (const auto& d : profiles) {
    auto perms = permutations(d);
    pts.insert(pts.end(), perms.begin(), perms.end());
  }
  return make_vertex_set(n, pts, "huffman(" + std::to_string(n) + ")");
}

VertexSet parity_vertices(std::size_t n, bool odd) {
  if (n < 1) throw InvalidArgument("parity_vertices needs n >= 1");
  check_cap(n, 16, "parity_vertices");
  std::vector<Vector> pts;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if ((__builtin_popcount(mask) % 2 == 1) != odd) continue;
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(Scalar(static_cast<int>(mask >> i & 1U)));
    pts.push_back(std::move(v));
  }
  return make_vertex_set(n, pts, std::string("parity(") + std::to_string(n) + (odd ? ",odd)" : ",even)"));
}

VertexSet completion_time_vertices(const Vector& p) {
  check_cap(p.size(), 8, "completion_time_vertices");
  const std::size_t n = p.size();
  if (n == 0) throw InvalidArgument("completion times need at least one job");
  const Backend backend = common_backend(p);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<Vector> pts;
  do {
    Vector c = zeros(n, backend);
    Scalar elapsed = Scalar::zero(backend);
    for (std::size_t job : order) {
      elapsed += p[job];
      c[job] = elapsed;
    }
    pts.push_back(std::move(c));
  } while (std::next_permutation(order.begin(), order.end()));
  return make_vertex_set(n, pts, "completion_time(" + join(p) + ")");
}

}  // namespace reflekt
