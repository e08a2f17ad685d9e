#include "reflekt/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "reflekt/errors.hpp"
#include "reflekt/lp.hpp"
#include "reflekt/reflections.hpp"

namespace reflekt {

bool VerificationReport::passed() const {
  if (!vertices.ok() || !objectives.ok()) return false;
  if (size && !size->pass) return false;
  return std::all_of(hypotheses.begin(), hypotheses.end(),
                     [](const HypothesisCheck& h) { return h.pass; });
}

namespace {

std::string join(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].to_string();
  }
  return out + ")";
}

Vector random_integer_vector(std::mt19937_64& rng, std::size_t dim, Backend backend) {
  std::uniform_int_distribution<int> dist(-10, 10);
  Vector out;
  out.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) out.push_back(Scalar::integer(dist(rng), backend));
  return out;
}

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.sign(0.0) == 0; });
}

Scalar best_value(const std::vector<Vector>& points, const Vector& c) {
  Scalar best = dot(c, points.front());
  for (std::size_t i = 1; i < points.size(); ++i) {
    Scalar v = dot(c, points[i]);
    if (exact_less(best, v)) best = std::move(v);
  }
  return best;
}

bool in_hull_or_member(const Vector& y, const VertexSet& set, const VertexLookup& lookup,
                       double tol) {
  if (lookup.contains(y)) return true;
  lp::Options options;
  options.tolerance = tol;
  return lp::in_hull(y, set.polytope(), options);
}

VerifyOptions with_chain_lift(const VerifyOptions& options, const RelationChain& chain) {
  VerifyOptions out = options;
  if (!out.lift && out.chain_lifts) {
    out.lift = [&chain, tol = options.tolerance](const Vector& y) { return chain_lift(chain, y, tol); };
  }
  return out;
}

bool in_base(const Vector& x, const VertexSet& base, double tol) {
  if (base.size() == 1) return approx_equal(x, base.points.front(), tol);
  return in_hull_or_member(x, base, VertexLookup(base), tol);
}

}  // namespace

std::vector<Vector> random_objectives(std::size_t count, std::size_t dim, std::uint64_t seed,
                                      Backend backend) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> out;
  while (out.size() < count) {
    Vector c = random_integer_vector(rng, dim, backend);
    if (dim > 0 && is_zero_vector(c)) continue;
    out.push_back(std::move(c));
  }
  return out;
}

VerificationReport verify_projection_equality(const ExtendedFormulation& ef, const VertexSet& oracle,
                                              const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (oracle.dim != ef.output_dim()) {
    throw DimensionError("oracle dimension " + std::to_string(oracle.dim) +
                         " differs from the projection dimension " +
                         std::to_string(ef.output_dim()));
  }
  if (oracle.points.empty()) throw InvalidArgument("oracle vertex set is empty");

  VerificationReport report;
  report.label = ef.label;
  const ExtendedFormulation reduced = eliminate_equations(ef, options.tolerance);
  const Backend backend = reduced.backend();
  const bool exact = backend == Backend::rational;
  lp::Options lp_options;
  lp_options.tolerance = options.tolerance;

  auto note = [&](std::string what) {
    if (report.failures.size() < options.failures_listed) report.failures.push_back(std::move(what));
  };

  auto lifted = [&](const Vector& v) {
    if (!options.lift) return false;
    const auto z = options.lift(v);
    return z && z->size() == ef.q.dim() && ef.q.contains(*z, options.tolerance) &&
           approx_equal(ef.projection.apply(*z), v, options.tolerance);
  };

  for (const auto& v : oracle.points) {
    ++report.vertices.total;
    if (lifted(v)) {
      ++report.vertices.passed;
      ++report.vertices.lifted;
    } else if (point_in_projection(reduced, v, options.tolerance)) {
      ++report.vertices.passed;
    } else {
      note("vertex " + join(v) + " not in projection");
      if (options.stop_early) break;
    }
  }

  const Matrix& proj = reduced.projection.linear();
  const Matrix proj_t = proj.transpose();
  if (!(options.stop_early && !report.vertices.ok())) {
    const auto objectives = random_objectives(options.objectives, oracle.dim, options.seed, backend);
    for (const auto& c : objectives) {
      ++report.objectives.total;
      const Vector lifted = proj_t * c;
      const Scalar shift = dot(c, reduced.projection.offset());
      lp::Result res = lp::optimize(reduced.q, lifted, lp::Sense::maximize, lp_options);
      const Scalar expected = best_value(oracle.points, c);
      if (res.status != lp::Status::optimal) {
        note("objective " + join(c) + ": LP " +
             (res.status == lp::Status::unbounded ? "unbounded" : "infeasible"));
        report.objectives.max_deviation = std::numeric_limits<double>::infinity();
        if (options.stop_early) break;
        continue;
      }
      const Scalar got = *res.value + shift;
      const double dev = std::fabs((got - expected).to_double());
      report.objectives.max_deviation = std::max(report.objectives.max_deviation, dev);
      const bool match = exact ? got == expected : dev <= options.tolerance;
      if (match) {
        ++report.objectives.passed;
      } else {
        note("objective " + join(c) + ": projection max " + got.to_string() + ", oracle max " +
             expected.to_string());
        if (options.stop_early) break;
      }
    }
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ConditionResult check_chain_conditions(const VertexSet& base, std::span<const ReflectionSpec> chain,
                                       const VertexSet& target, double tol) {
  ConditionResult out;
  out.condition1 = true;
  const VertexLookup lookup(target);
  for (const auto& p : base.points) {
    if (!in_hull_or_member(p, target, lookup, tol)) {
      out.condition1 = false;
      out.detail = "base point " + join(p) + " outside conv(W)";
      break;
    }
  }
  for (std::size_t i = 0; out.condition1 && i < chain.size(); ++i) {
    for (const auto& w : target.points) {
      Vector image = reflect_point(chain[i], w);
      if (!in_hull_or_member(image, target, lookup, tol)) {
        out.condition1 = false;
        out.detail = "reflection " + std::to_string(i + 1) + " moves " + join(w) + " outside conv(W)";
        break;
      }
    }
  }
  out.condition2 = true;
  for (const auto& w : target.points) {
    Vector x = apply_preimage_chain(chain, w, tol);
    if (!in_base(x, base, tol)) {
      out.condition2 = false;
      if (out.detail.empty()) out.detail = "preimage of " + join(w) + " is " + join(x) + ", not in P";
      break;
    }
  }
  return out;
}

bool check_chain_preimages(const RelationChain& chain, const VertexSet& base, const VertexSet& target,
                           std::string* detail, double tol) {
  for (const auto& w : target.points) {
    Vector x = chain_preimage(chain, w, tol);
    if (!in_base(x, base, tol)) {
      if (detail) *detail = "preimage of " + join(w) + " is " + join(x) + ", not in P";
      return false;
    }
  }
  return true;
}

bool check_affine_generators(const PolyhedralRelation& rel, std::size_t samples, std::uint64_t seed,
                             double tol) {
  if (!rel.generators || rel.generators->empty()) return false;
  const Backend backend = rel.body.backend();
  std::mt19937_64 rng(seed);
  lp::Options lp_options;
  lp_options.tolerance = tol;

  // Sample points of the domain.
  std::vector<Vector> xs;
  if (rel.reflection) {
    while (xs.size() < samples) {
      xs.push_back(canonical_preimage(*rel.reflection, random_integer_vector(rng, rel.n, backend), tol));
    }
  } else {
    HPolyhedron boxed = rel.body;
    const std::size_t d = rel.n + rel.m;
    for (std::size_t j = 0; j < d; ++j) {
      boxed.add_inequality(unit_vector(d, j, backend), Scalar::integer(10, backend));
      boxed.add_inequality(scale(unit_vector(d, j, backend), Scalar::integer(-1, backend)),
                           Scalar::integer(10, backend));
    }
    std::vector<Vector> corners;
    for (std::size_t attempt = 0; corners.size() < std::max<std::size_t>(2, samples / 2) &&
                                  attempt < 4 * samples + 8;
         ++attempt) {
      Vector c = random_integer_vector(rng, d, backend);
      lp::Result res = lp::optimize(boxed, c, lp::Sense::maximize, lp_options);
      if (res.status != lp::Status::optimal) return false;
      corners.emplace_back(res.point.begin(), res.point.begin() + static_cast<std::ptrdiff_t>(rel.n));
    }
    std::uniform_int_distribution<std::size_t> pick(0, corners.size() - 1);
    std::uniform_int_distribution<int> weight(1, 6);
    xs = corners;
    while (xs.size() < samples) {
      const Vector& a = corners[pick(rng)];
      const Vector& b = corners[pick(rng)];
      const int w = weight(rng);
      Scalar t = Scalar::fraction(w, 7, backend);
      Scalar s = Scalar::one(backend) - t;
      xs.push_back(add(scale(a, t), scale(b, s)));
    }
  }

  for (const auto& x : xs) {
    std::vector<Vector> images;
    for (const auto& g : *rel.generators) {
      Vector y = g.apply(x);
      Vector xy = x;
      xy.insert(xy.end(), y.begin(), y.end());
      if (!rel.body.contains(xy, tol)) return false;
      images.push_back(std::move(y));
    }
    HPolyhedron fiber = rel.fiber(x);
    for (int k = 0; k < 10; ++k) {
      Vector c = random_integer_vector(rng, rel.m, backend);
      lp::Result res = lp::optimize(fiber, c, lp::Sense::maximize, lp_options);
      if (res.status != lp::Status::optimal) return false;
      if (compare(*res.value, best_value(images, c), tol) != 0) return false;
    }
  }
  return true;
}

SizeCheck size_report(const ExtendedFormulation& ef, const ExpectedSize& expected) {
  SizeCheck out;
  out.expected = expected;
  out.actual.inequalities = ef.ledger.inequalities;
  out.actual.raw_variables = ef.ledger.raw_variables;
  out.actual.reduced_variables = ef.ledger.reduced_variables
                                     ? *ef.ledger.reduced_variables
                                     : *eliminate_equations(ef).ledger.reduced_variables;
  for (const auto& [key, value] : expected.extras) {
    auto it = ef.ledger.extras.find(key);
    if (it != ef.ledger.extras.end()) out.actual.extras[key] = it->second;
  }
  auto cmp = [&](const char* what, std::size_t want, std::size_t got) {
    if (want != got) {
      out.diffs.push_back(std::string(what) + ": expected " + std::to_string(want) + ", got " +
                          std::to_string(got));
    }
  };
  cmp("inequalities", expected.inequalities, out.actual.inequalities);
  cmp("raw variables", expected.raw_variables, out.actual.raw_variables);
  cmp("reduced variables", expected.reduced_variables, out.actual.reduced_variables);
  for (const auto& [key, value] : expected.extras) {
    auto it = out.actual.extras.find(key);
    cmp(key.c_str(), value, it == out.actual.extras.end() ? 0 : it->second);
  }
  out.pass = out.diffs.empty();
  return out;
}

std::vector<Vector> recipe_base_vertices(const ConstructionRecipe& recipe) {
  const HPolyhedron base = recipe_base(recipe);
  const Backend backend = base.backend();
  const std::size_t n = base.dim();
  if (base.num_inequalities() == 0) {
    // A point given by n coordinate equations.
    Vector p = zeros(n, backend);
    for (const auto& eq : base.equations()) {
      for (std::size_t j = 0; j < n; ++j) {
        if (eq.coeffs[j].sign(0.0) != 0) p[j] = eq.rhs / eq.coeffs[j];
      }
    }
    return {p};
  }
  auto it = recipe.params.find("base");
  const std::string kind = it == recipe.params.end()
                               ? (recipe.name == RecipeName::signing ? "simplex" : "segment")
                               : it->second;
  if (kind == "simplex") {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(unit_vector(n, i, backend));
    return out;
  }
  if (kind == "segment") {
    const double phi = std::numbers::pi / static_cast<double>(std::stoul(recipe.params.at("m")));
    return {{Scalar::from_double(1.0), Scalar::from_double(0.0)},
            {Scalar::from_double(std::cos(phi)), Scalar::from_double(std::sin(phi))}};
  }
  throw InvalidArgument("cannot list vertices of base '" + kind + "'");
}

namespace {

VertexSet orbit_union(const std::vector<Vector>& points, VertexSet (*orbit)(const Vector&),
                      std::string label) {
  std::vector<Vector> all;
  for (const auto& p : points) {
    VertexSet part = orbit(p);
    all.insert(all.end(), part.points.begin(), part.points.end());
  }
  return make_vertex_set(points.front().size(), all, std::move(label));
}

std::size_t count_param(const ConstructionRecipe& recipe, const char* key) {
  return std::stoul(recipe.params.at(key));
}

}  // namespace

VertexSet recipe_oracle(const ConstructionRecipe& recipe) {
  validate(recipe);
  switch (recipe.name) {
    case RecipeName::signing:
      return sign_orbit(recipe_base_vertices(recipe));
    case RecipeName::mgon:
      return mgon_orbit(count_param(recipe, "m"));
    case RecipeName::i2_permutahedron:
      return i2_orbit(recipe_base_vertices(recipe), count_param(recipe, "m"));
    case RecipeName::a_permutahedron:
      return orbit_union(recipe_base_vertices(recipe), permutation_orbit, "permutation");
    case RecipeName::b_permutahedron:
      return orbit_union(recipe_base_vertices(recipe), signed_orbit, "signed");
    case RecipeName::d_permutahedron:
      return orbit_union(recipe_base_vertices(recipe), even_signed_orbit, "even_signed");
    case RecipeName::parity: {
      auto it = recipe.params.find("parity");
      return parity_vertices(count_param(recipe, "n"), it == recipe.params.end() || it->second == "odd");
    }
    case RecipeName::huffman_quadratic:
    case RecipeName::huffman_nlogn:
      return huffman_vectors(count_param(recipe, "n"));
    case RecipeName::completion_time: {
      const std::string& text = recipe.params.at("p");
      Vector p;
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) p.push_back(Scalar::parse(item, recipe_backend(recipe)));
      return completion_time_vertices(p);
    }
  }
  throw InvalidArgument("unknown recipe");
}

VerificationReport verify_recipe(const ConstructionRecipe& recipe, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const RelationChain chain = recipe_chain(recipe);
  ExtendedFormulation ef = build_extension(chain);
  ef.label = recipe_label(recipe);
  const VertexSet oracle = recipe_oracle(recipe);
  VerificationReport report = verify_projection_equality(ef, oracle, with_chain_lift(options, chain));
  report.size = size_report(ef, expected_size(recipe));

  const double tol = options.tolerance;
  if (recipe.name != RecipeName::completion_time) {
    const VertexSet base = make_vertex_set(chain.base.dim(), recipe_base_vertices(recipe), "base");
    std::string detail;
    const bool ok = check_chain_preimages(chain, base, oracle, &detail, tol);
    report.hypotheses.push_back({"preimage chain maps oracle into base", ok, detail});
  }
  const bool pure_reflections =
      std::all_of(chain.relations.begin(), chain.relations.end(),
                  [](const PolyhedralRelation& r) { return r.reflection.has_value(); });
  if (pure_reflections && !chain.relations.empty()) {
    const VertexSet base = make_vertex_set(chain.base.dim(), recipe_base_vertices(recipe), "base");
    const auto specs = chain_specs(chain);
    ConditionResult cond = check_chain_conditions(base, specs, oracle, tol);
    report.hypotheses.push_back({"base and reflections stay inside the target", cond.condition1,
                                 cond.condition1 ? "" : cond.detail});
  }
  if (recipe.name == RecipeName::huffman_quadratic || recipe.name == RecipeName::huffman_nlogn) {
    const std::size_t n = count_param(recipe, "n");
    if (n >= 3) {
      const auto levels = recipe.name == RecipeName::huffman_quadratic
                              ? huffman_quadratic_levels(n)
                              : huffman_nlogn_levels(n, recipe_network(recipe));
      bool ok = true;
      std::string detail;
      for (const auto& v : oracle.points) {
        if (!huffman_level_property(v, levels)) {
          ok = false;
          detail = "level property fails for " + join(v);
          break;
        }
      }
      report.hypotheses.push_back({"two largest entries meet at every level", ok, detail});
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<MutationOutcome> mutation_sweep(const RelationChain& chain, const VertexSet& oracle,
                                            const VerifyOptions& options) {
  std::vector<MutationOutcome> out;
  VerifyOptions opts = options;
  opts.stop_early = true;
  for (std::size_t i = 0; i < chain.relations.size(); ++i) {
    MutationOutcome m;
    m.index = i;
    m.relation = chain.relations[i].label;
    RelationChain cut = without_relation(chain, i);
    try {
      ExtendedFormulation ef = build_extension(cut, false);
      if (ef.output_dim() != oracle.dim) {
        m.kind = MutationKind::type_chain_break;
      } else {
        const VerifyOptions cut_opts = with_chain_lift(opts, cut);
        m.kind = verify_projection_equality(ef, oracle, cut_opts).passed() ? MutationKind::undetected
                                                                           : MutationKind::detected;
      }
    } catch (const TypeChainMismatch&) {
      m.kind = MutationKind::type_chain_break;
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::string report_table(const VerificationReport& report) {
  std::ostringstream os;
  auto row = [&](const std::string& name, const std::string& value, bool ok) {
    os << "  " << name;
    for (std::size_t i = name.size(); i < 44; ++i) os << ' ';
    os << value;
    for (std::size_t i = value.size(); i < 24; ++i) os << ' ';
    os << (ok ? "ok" : "FAIL") << '\n';
  };
  os << report.label << '\n';
  std::string vertices =
      std::to_string(report.vertices.passed) + "/" + std::to_string(report.vertices.total);
  if (report.vertices.lifted) vertices += " (" + std::to_string(report.vertices.lifted) + " lifted)";
  row("vertices in projection", vertices, report.vertices.ok());
  std::ostringstream dev;
  dev << report.objectives.max_deviation;
  row("support function matches",
      std::to_string(report.objectives.passed) + "/" + std::to_string(report.objectives.total) +
          " (dev " + dev.str() + ")",
      report.objectives.ok());
  if (report.size) {
    const auto& s = *report.size;
    row("inequalities", std::to_string(s.actual.inequalities) + " (expect " +
                            std::to_string(s.expected.inequalities) + ")",
        s.actual.inequalities == s.expected.inequalities);
    row("raw variables", std::to_string(s.actual.raw_variables) + " (expect " +
                             std::to_string(s.expected.raw_variables) + ")",
        s.actual.raw_variables == s.expected.raw_variables);
    row("reduced variables", std::to_string(s.actual.reduced_variables) + " (expect " +
                                 std::to_string(s.expected.reduced_variables) + ")",
        s.actual.reduced_variables == s.expected.reduced_variables);
  }
  for (const auto& h : report.hypotheses) row(h.name, "", h.pass);
  for (const auto& f : report.failures) os << "  ! " << f << '\n';
  os << (report.passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace reflekt
