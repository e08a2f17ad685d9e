#include "reflekt/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>

#include "reflekt/errors.hpp"

namespace reflekt {

// ---------------------------------------------------------------------------
// Chains

void RelationChain::push(PolyhedralRelation rel, std::optional<AffineMap> section) {
  relations.push_back(std::move(rel));
  sections.push_back(std::move(section));
}

ExtendedFormulation build_extension(const RelationChain& chain, bool check_nonempty) {
  ComposeOptions options;
  options.check_nonempty = check_nonempty;
  options.label = chain.label;
  ExtendedFormulation ef = compose_extension(chain.base, chain.relations, options);
  ef.ledger.extras = chain.extras;
  return ef;
}

Vector chain_preimage(const RelationChain& chain, const Vector& y, double tol) {
  Vector out = y;
  for (std::size_t i = chain.relations.size(); i-- > 0;) {
    const auto& rel = chain.relations[i];
    if (out.size() != rel.m) throw DimensionError("chain_preimage: dimension mismatch");
    if (rel.reflection) {
      out = canonical_preimage(*rel.reflection, out, tol);
    } else if (i < chain.sections.size() && chain.sections[i]) {
      out = chain.sections[i]->apply(out);
    } else {
      throw InvalidArgument("relation '" + rel.label + "' has no canonical preimage");
    }
  }
  return out;
}

std::optional<Vector> chain_lift(const RelationChain& chain, const Vector& y, double tol) {
  std::vector<Vector> blocks{y};
  for (std::size_t i = chain.relations.size(); i-- > 0;) {
    const auto& rel = chain.relations[i];
    const Vector& cur = blocks.back();
    if (cur.size() != rel.m) return std::nullopt;
    if (rel.reflection) {
      blocks.push_back(canonical_preimage(*rel.reflection, cur, tol));
    } else if (i < chain.sections.size() && chain.sections[i]) {
      blocks.push_back(chain.sections[i]->apply(cur));
    } else {
      return std::nullopt;
    }
  }
  Vector z;
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) z.insert(z.end(), it->begin(), it->end());
  return z;
}

RelationChain without_relation(const RelationChain& chain, std::size_t index) {
  if (index >= chain.relations.size()) throw InvalidArgument("relation index out of range");
  RelationChain out = chain;
  out.relations.erase(out.relations.begin() + static_cast<std::ptrdiff_t>(index));
  out.sections.erase(out.sections.begin() + static_cast<std::ptrdiff_t>(index));
  out.label += " without #" + std::to_string(index + 1);
  return out;
}

std::vector<ReflectionSpec> chain_specs(const RelationChain& chain) {
  std::vector<ReflectionSpec> out;
  for (const auto& rel : chain.relations) {
    if (rel.reflection) out.push_back(*rel.reflection);
  }
  return out;
}

std::size_t ceil_log2(std::size_t m) {
  if (m == 0) throw InvalidArgument("ceil_log2 of zero");
  std::size_t r = 0;
  while ((std::size_t{1} << r) < m) ++r;
  return r;
}

ReflectionSpec i2_spec(double phi) {
  return {{Scalar::from_double(-std::sin(phi)), Scalar::from_double(std::cos(phi))},
          Scalar::zero(Backend::floating)};
}

namespace {

void require_sorting(const ComparatorSeq& net, std::size_t n) {
  if (net.n != n) {
    throw DimensionError("network is for n=" + std::to_string(net.n) + ", base has dimension " +
                         std::to_string(n));
  }
  if (!is_sorting_network(net)) throw InvalidArgument("comparator sequence is not a sorting network");
}

void append_transpositions(RelationChain& chain, const ComparatorSeq& net, Backend backend) {
  for (auto& rel : transposition_chain(net, backend)) chain.push(std::move(rel));
}

Vector ones(std::size_t n, Backend backend) { return Vector(n, Scalar::one(backend)); }

}  // namespace

RelationChain signing_chain(const HPolyhedron& base) {
  const std::size_t n = base.dim();
  if (n == 0) throw DimensionError("signing needs a base of positive dimension");
  RelationChain chain{base, {}, {}, "signing", {}};
  for (std::size_t k = 1; k <= n; ++k) chain.push(sign_relation(k, n, base.backend()));
  return chain;
}

RelationChain i2_chain(const HPolyhedron& base, std::size_t m) {
  if (m < 3) throw InvalidArgument("I2(m) constructions need m >= 3");
  if (base.dim() != 2) throw DimensionError("I2(m) constructions need a base in the plane");
  if (base.backend() != Backend::floating) {
    throw BackendMismatch("I2(m) constructions need the float backend");
  }
  const std::size_t r = ceil_log2(m);
  RelationChain chain{base, {}, {}, "i2(" + std::to_string(m) + ")", {}};
  for (std::size_t j = 0; j <= r; ++j) {
    const double phi = static_cast<double>(std::size_t{1} << j) * std::numbers::pi /
                       static_cast<double>(m);
    chain.push(reflection_relation(i2_spec(phi), "H" + std::to_string(std::size_t{1} << j) + "pi/" +
                                                     std::to_string(m)));
  }
  return chain;
}

RelationChain mgon_chain(std::size_t m) {
  RelationChain chain = i2_chain(
      HPolyhedron::point({Scalar::from_double(1.0), Scalar::from_double(0.0)}), m);
  chain.label = "mgon(" + std::to_string(m) + ")";
  return chain;
}

RelationChain a_permutahedron_chain(const HPolyhedron& base, const ComparatorSeq& net) {
  require_sorting(net, base.dim());
  RelationChain chain{base, {}, {}, "a_permutahedron", {}};
  append_transpositions(chain, net, base.backend());
  return chain;
}

RelationChain b_permutahedron_chain(const HPolyhedron& base, const ComparatorSeq& net) {
  const std::size_t n = base.dim();
  require_sorting(net, n);
  RelationChain chain{base, {}, {}, "b_permutahedron", {}};
  append_transpositions(chain, net, base.backend());
  for (std::size_t k = 1; k <= n; ++k) chain.push(sign_relation(k, n, base.backend()));
  return chain;
}

RelationChain d_permutahedron_chain(const HPolyhedron& base, const ComparatorSeq& net) {
  const std::size_t n = base.dim();
  if (n < 2) throw InvalidArgument("D_n constructions need n >= 2");
  if (net.size() > 0) require_sorting(net, n);
  RelationChain chain{base, {}, {}, "d_permutahedron", {}};
  if (net.size() > 0) append_transpositions(chain, net, base.backend());
  for (std::size_t k = 1; k < n; ++k) {
    auto [first, second] = even_sign_pair(k, k + 1, n, base.backend());
    chain.push(std::move(first));
    chain.push(std::move(second));
  }
  return chain;
}

RelationChain parity_chain(std::size_t n, bool odd) {
  if (n < 2) throw InvalidArgument("parity polytopes need n >= 2");
  const Backend backend = Backend::rational;
  Vector start = ones(n, backend);
  if (odd) start[0] = Scalar::integer(-1, backend);
  RelationChain chain =
      d_permutahedron_chain(HPolyhedron::point(start), ComparatorSeq{n, {}, SeqOrder::relation});
  chain.label = std::string("parity(") + std::to_string(n) + (odd ? ",odd)" : ",even)");

  Matrix half(n, n, backend);
  Matrix twice(n, n, backend);
  for (std::size_t i = 0; i < n; ++i) {
    half(i, i) = Scalar::fraction(-1, 2, backend);
    twice(i, i) = Scalar::integer(-2, backend);
  }
  AffineMap to01(std::move(half), Vector(n, Scalar::fraction(1, 2, backend)));
  AffineMap back(std::move(twice), ones(n, backend));
  chain.push(graph_relation(to01, "to01"), back);
  return chain;
}

AffineMap huffman_embedding(std::size_t k) {
  if (k < 3) throw InvalidArgument("Huffman embedding needs k >= 3");
  const Backend backend = Backend::rational;
  Matrix lin(k, k - 1, backend);
  for (std::size_t i = 0; i + 2 < k; ++i) lin(i, i) = Scalar::one(backend);
  lin(k - 2, k - 2) = Scalar::one(backend);
  lin(k - 1, k - 2) = Scalar::one(backend);
  Vector offset = zeros(k, backend);
  offset[k - 2] = Scalar::one(backend);
  offset[k - 1] = Scalar::one(backend);
  return AffineMap(std::move(lin), std::move(offset));
}

AffineMap huffman_contraction(std::size_t k) {
  if (k < 3) throw InvalidArgument("Huffman contraction needs k >= 3");
  const Backend backend = Backend::rational;
  Matrix lin(k - 1, k, backend);
  for (std::size_t i = 0; i + 1 < k; ++i) lin(i, i) = Scalar::one(backend);
  Vector offset = zeros(k - 1, backend);
  offset[k - 2] = Scalar::integer(-1, backend);
  return AffineMap(std::move(lin), std::move(offset));
}

std::vector<ComparatorSeq> huffman_quadratic_levels(std::size_t n) {
  if (n < 2) throw InvalidArgument("Huffman polytopes need n >= 2");
  std::vector<ComparatorSeq> levels;
  for (std::size_t k = 3; k <= n; ++k) levels.push_back(theta_seq(k));
  return levels;
}

std::vector<ComparatorSeq> huffman_nlogn_levels(std::size_t n, const ComparatorSeq& net) {
  if (n < 2) throw InvalidArgument("Huffman polytopes need n >= 2");
  std::vector<ComparatorSeq> levels;
  if (n < 3) return levels;
  require_sorting(net, n);
  for (std::size_t k = 3; k < n; ++k) levels.push_back(stride_seq(k));
  levels.push_back(net.as(SeqOrder::relation));
  return levels;
}

namespace {

RelationChain huffman_chain(std::size_t n, const std::vector<ComparatorSeq>& levels,
                            std::string label) {
  const Backend backend = Backend::rational;
  RelationChain chain{HPolyhedron::point(ones(2, backend)), {}, {}, std::move(label), {}};
  for (std::size_t k = 3; k <= n; ++k) {
    chain.push(graph_relation(huffman_embedding(k), "eps" + std::to_string(k)),
               huffman_contraction(k));
    append_transpositions(chain, levels[k - 3], backend);
  }
  return chain;
}

}  // namespace

RelationChain huffman_quadratic_chain(std::size_t n) {
  return huffman_chain(n, huffman_quadratic_levels(n), "huffman_quadratic(" + std::to_string(n) + ")");
}

RelationChain huffman_nlogn_chain(std::size_t n, const ComparatorSeq& net) {
  return huffman_chain(n, huffman_nlogn_levels(n, net), "huffman_nlogn(" + std::to_string(n) + ")");
}

std::vector<Vector> huffman_level_images(const Vector& v, const std::vector<ComparatorSeq>& levels) {
  const std::size_t n = levels.size() + 2;
  if (v.size() != n) throw DimensionError("huffman_level_images: vector/level mismatch");
  std::vector<Vector> images;
  Vector x = v;
  for (std::size_t k = n; k >= 3; --k) {
    x = apply_comparators(levels[k - 3], x, SeqOrder::application);
    images.push_back(x);
    x = huffman_contraction(k).apply(x);
  }
  return images;
}

bool huffman_level_property(const Vector& v, const std::vector<ComparatorSeq>& levels) {
  for (const auto& x : huffman_level_images(v, levels)) {
    const std::size_t k = x.size();
    const Scalar& top = *std::max_element(x.begin(), x.end(), exact_less);
    if (x[k - 1] != top || x[k - 2] != top) return false;
  }
  return true;
}

RelationChain completion_time_chain(const Vector& p) {
  const std::size_t n = p.size();
  if (n == 0) throw InvalidArgument("completion times need at least one job");
  const Backend backend = common_backend(p);
  for (const auto& t : p) {
    if (t.sign() < 0) throw InvalidArgument("processing times must be non-negative");
  }
  RelationChain chain{HPolyhedron::point({p[0]}), {}, {}, "completion_time", {}};
  std::size_t cube = 0;
  for (std::size_t k = 2; k <= n; ++k) {
    const std::size_t h = k - 1;  // jobs scheduled so far
    PolyhedralRelation lift;
    lift.n = h;
    lift.m = 2 * h;
    lift.body = HPolyhedron(3 * h, backend);
    for (std::size_t i = 0; i < h; ++i) {
      Vector eq = zeros(3 * h, backend);
      eq[i] = Scalar::integer(-1, backend);
      eq[h + i] = Scalar::one(backend);
      lift.body.add_equation(std::move(eq), Scalar::zero(backend));
    }
    for (std::size_t i = 0; i < h; ++i) {
      lift.body.add_inequality(scale(unit_vector(3 * h, 2 * h + i, backend),
                                     Scalar::integer(-1, backend)),
                               Scalar::zero(backend));
      lift.body.add_inequality(unit_vector(3 * h, 2 * h + i, backend), Scalar::one(backend));
    }
    lift.label = "lift" + std::to_string(k);
    chain.push(std::move(lift));
    cube += h;

    // (x', x'') -> (x' + p_k x'', <p~, 1 - x''> + p_k)
    Matrix lin(k, 2 * h, backend);
    Scalar total = p[k - 1];
    for (std::size_t i = 0; i < h; ++i) {
      lin(i, i) = Scalar::one(backend);
      lin(i, h + i) = p[k - 1];
      lin(h, h + i) = -p[i];
      total += p[i];
    }
    Vector offset = zeros(k, backend);
    offset[h] = total;
    chain.push(graph_relation(AffineMap(std::move(lin), std::move(offset)),
                              "schedule" + std::to_string(k)));
  }
  chain.extras["cube_dimension"] = cube;
  return chain;
}

ExtendedFormulation signing_ef(const HPolyhedron& base) { return build_extension(signing_chain(base)); }
ExtendedFormulation mgon_ef(std::size_t m) { return build_extension(mgon_chain(m)); }
ExtendedFormulation i2_permutahedron_ef(const HPolyhedron& base, std::size_t m) {
  return build_extension(i2_chain(base, m));
}
ExtendedFormulation a_permutahedron_ef(const HPolyhedron& base, const ComparatorSeq& net) {
  return build_extension(a_permutahedron_chain(base, net));
}
ExtendedFormulation b_permutahedron_ef(const HPolyhedron& base, const ComparatorSeq& net) {
  return build_extension(b_permutahedron_chain(base, net));
}
ExtendedFormulation d_permutahedron_ef(const HPolyhedron& base, const ComparatorSeq& net) {
  return build_extension(d_permutahedron_chain(base, net));
}
ExtendedFormulation parity_polytope_ef(std::size_t n, bool odd) {
  return build_extension(parity_chain(n, odd));
}
ExtendedFormulation huffman_ef_quadratic(std::size_t n) {
  return build_extension(huffman_quadratic_chain(n));
}
ExtendedFormulation huffman_ef_nlogn(std::size_t n, const ComparatorSeq& net) {
  return build_extension(huffman_nlogn_chain(n, net));
}
ExtendedFormulation completion_time_ef(const Vector& p) {
  return build_extension(completion_time_chain(p));
}

// ---------------------------------------------------------------------------
// Recipes

namespace {

struct RecipeInfo {
  RecipeName name;
  std::string_view text;
  std::set<std::string> keys;
};

const std::vector<RecipeInfo>& recipe_table() {
  static const std::vector<RecipeInfo> table = {
      {RecipeName::signing, "signing", {"n", "base", "backend"}},
      {RecipeName::mgon, "mgon", {"m", "backend"}},
      {RecipeName::i2_permutahedron, "i2_permutahedron", {"m", "base", "backend"}},
      {RecipeName::a_permutahedron, "a_permutahedron", {"n", "base", "network", "backend"}},
      {RecipeName::b_permutahedron, "b_permutahedron", {"n", "base", "network", "backend"}},
      {RecipeName::d_permutahedron, "d_permutahedron", {"n", "base", "network", "backend"}},
      {RecipeName::parity, "parity", {"n", "parity"}},
      {RecipeName::huffman_quadratic, "huffman_quadratic", {"n"}},
      {RecipeName::huffman_nlogn, "huffman_nlogn", {"n", "network"}},
      {RecipeName::completion_time, "completion_time", {"p", "backend"}},
  };
  return table;
}

const RecipeInfo& info(RecipeName name) {
  for (const auto& r : recipe_table()) {
    if (r.name == name) return r;
  }
  throw InvalidArgument("unknown recipe");
}

std::optional<std::string> param(const ConstructionRecipe& recipe, const std::string& key) {
  auto it = recipe.params.find(key);
  if (it == recipe.params.end()) return std::nullopt;
  return it->second;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("parameter " + key + " must be a non-negative integer, got '" + text + "'");
  }
  return value;
}

std::size_t required_count(const ConstructionRecipe& recipe, const std::string& key) {
  auto v = param(recipe, key);
  if (!v) throw InvalidArgument(std::string(to_string(recipe.name)) + " needs parameter " + key);
  return parse_count(key, *v);
}

Vector parse_list(const std::string& text, Backend backend) {
  Vector out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string item = text.substr(start, comma - start);
    if (item.empty()) throw InvalidArgument("empty entry in list '" + text + "'");
    out.push_back(Scalar::parse(item, backend));
    start = comma + 1;
  }
  return out;
}

bool is_i2(RecipeName name) {
  return name == RecipeName::mgon || name == RecipeName::i2_permutahedron;
}

bool takes_network(RecipeName name) {
  return name == RecipeName::a_permutahedron || name == RecipeName::b_permutahedron ||
         name == RecipeName::d_permutahedron || name == RecipeName::huffman_nlogn;
}

std::string base_text(const ConstructionRecipe& recipe) {
  if (auto b = param(recipe, "base")) return *b;
  switch (recipe.name) {
    case RecipeName::signing:
      return "simplex";
    case RecipeName::i2_permutahedron:
      return "segment";
    default: {
      std::string out;
      const std::size_t n = required_count(recipe, "n");
      for (std::size_t i = 1; i <= n; ++i) out += (i > 1 ? "," : "") + std::to_string(i);
      return out;
    }
  }
}

// Hypothesis of each construction checked on a point base: the point must be
// its own canonical representative.
void check_point_hypothesis(const ConstructionRecipe& recipe, const Vector& v) {
  auto fail = [&](const char* what) {
    throw InvalidArgument(std::string(to_string(recipe.name)) + ": base point must satisfy " + what);
  };
  switch (recipe.name) {
    case RecipeName::signing:
      if (abs_vec(v) != v) fail("|v| = v");
      break;
    case RecipeName::a_permutahedron:
      if (sort_vec(v) != v) fail("sort(v) = v");
      break;
    case RecipeName::b_permutahedron:
      if (sortabs_vec(v) != v) fail("sortabs(v) = v");
      break;
    case RecipeName::d_permutahedron:
      if (dn_canonical(v) != v) fail("|v_1| <= v_2 <= ... <= v_n");
      break;
    case RecipeName::i2_permutahedron: {
      const std::size_t m = required_count(recipe, "m");
      ReflectionSpec h = i2_spec(std::numbers::pi / static_cast<double>(m));
      if (v[1].sign() < 0 || !in_halfspace(h, v)) fail("the fundamental domain of I2(m)");
      break;
    }
    default:
      break;
  }
}

}  // namespace

std::string_view to_string(RecipeName name) { return info(name).text; }

RecipeName parse_recipe_name(std::string_view text) {
  for (const auto& r : recipe_table()) {
    if (r.text == text) return r.name;
  }
  throw InvalidArgument("unknown recipe '" + std::string(text) + "'");
}

const std::vector<RecipeName>& all_recipes() {
  static const std::vector<RecipeName> names = [] {
    std::vector<RecipeName> out;
    for (const auto& r : recipe_table()) out.push_back(r.name);
    return out;
  }();
  return names;
}

Backend recipe_backend(const ConstructionRecipe& recipe) {
  auto text = param(recipe, "backend");
  if (is_i2(recipe.name)) {
    if (text && parse_backend(*text) != Backend::floating) {
      throw BackendMismatch(std::string(to_string(recipe.name)) +
                            " has irrational data and needs the float backend");
    }
    return Backend::floating;
  }
  return text ? parse_backend(*text) : Backend::rational;
}

std::size_t recipe_dimension(const ConstructionRecipe& recipe) {
  switch (recipe.name) {
    case RecipeName::mgon:
    case RecipeName::i2_permutahedron:
      return 2;
    case RecipeName::completion_time: {
      auto p = param(recipe, "p");
      if (!p) throw InvalidArgument("completion_time needs parameter p");
      return parse_list(*p, Backend::rational).size();
    }
    case RecipeName::parity:
    case RecipeName::huffman_quadratic:
    case RecipeName::huffman_nlogn:
      return required_count(recipe, "n");
    default: {
      if (auto n = param(recipe, "n")) return parse_count("n", *n);
      const std::string b = base_text(recipe);
      if (b == "simplex" || b == "segment") {
        throw InvalidArgument(std::string(to_string(recipe.name)) + " needs parameter n");
      }
      return parse_list(b, Backend::rational).size();
    }
  }
}

HPolyhedron recipe_base(const ConstructionRecipe& recipe) {
  const Backend backend = recipe_backend(recipe);
  switch (recipe.name) {
    case RecipeName::mgon:
      return HPolyhedron::point({Scalar::from_double(1.0), Scalar::from_double(0.0)});
    case RecipeName::parity:
    case RecipeName::huffman_quadratic:
    case RecipeName::huffman_nlogn:
    case RecipeName::completion_time:
      return recipe_chain(recipe).base;
    default:
      break;
  }
  const std::string b = base_text(recipe);
  const std::size_t n = recipe_dimension(recipe);
  if (b == "simplex") return HPolyhedron::standard_simplex(n, backend);
  if (b == "segment") {
    if (recipe.name != RecipeName::i2_permutahedron) {
      throw InvalidArgument("base=segment is only defined for i2_permutahedron");
    }
    const double phi = std::numbers::pi / static_cast<double>(required_count(recipe, "m"));
    return HPolyhedron::segment({Scalar::from_double(1.0), Scalar::from_double(0.0)},
                                {Scalar::from_double(std::cos(phi)), Scalar::from_double(std::sin(phi))});
  }
  Vector point = parse_list(b, backend);
  if (point.size() != n) {
    throw DimensionError("base point has " + std::to_string(point.size()) + " entries, n = " +
                         std::to_string(n));
  }
  check_point_hypothesis(recipe, point);
  return HPolyhedron::point(point);
}

ComparatorSeq recipe_network(const ConstructionRecipe& recipe) {
  const std::size_t n = recipe_dimension(recipe);
  const std::string kind = param(recipe, "network").value_or("batcher");
  if (kind == "batcher") return batcher(n);
  if (kind == "insertion") return insertion(n);
  if (kind == "none") return ComparatorSeq{n, {}, SeqOrder::application};
  throw InvalidArgument("network must be batcher, insertion or none, got '" + kind + "'");
}

void validate(const ConstructionRecipe& recipe) {
  const RecipeInfo& r = info(recipe.name);
  for (const auto& [key, value] : recipe.params) {
    if (!r.keys.contains(key)) {
      throw InvalidArgument(std::string(r.text) + " does not take parameter '" + key + "'");
    }
  }
  recipe_backend(recipe);
  switch (recipe.name) {
    case RecipeName::mgon:
    case RecipeName::i2_permutahedron:
      if (required_count(recipe, "m") < 3) throw InvalidArgument("m must be at least 3");
      break;
    case RecipeName::parity: {
      if (required_count(recipe, "n") < 2) throw InvalidArgument("parity needs n >= 2");
      const std::string p = param(recipe, "parity").value_or("odd");
      if (p != "odd" && p != "even") throw InvalidArgument("parity must be odd or even");
      break;
    }
    case RecipeName::huffman_quadratic:
    case RecipeName::huffman_nlogn:
      if (required_count(recipe, "n") < 2) throw InvalidArgument("Huffman polytopes need n >= 2");
      break;
    case RecipeName::completion_time: {
      auto p = param(recipe, "p");
      if (!p) throw InvalidArgument("completion_time needs parameter p");
      for (const auto& t : parse_list(*p, recipe_backend(recipe))) {
        if (t.sign() < 0) throw InvalidArgument("processing times must be non-negative");
      }
      break;
    }
    default:
      if (recipe_dimension(recipe) < 1) throw InvalidArgument("n must be positive");
      if (recipe.name == RecipeName::d_permutahedron && recipe_dimension(recipe) < 2) {
        throw InvalidArgument("d_permutahedron needs n >= 2");
      }
      break;
  }
  if (takes_network(recipe.name)) recipe_network(recipe);
  if (!is_i2(recipe.name) && recipe.name != RecipeName::parity &&
      recipe.name != RecipeName::huffman_quadratic && recipe.name != RecipeName::huffman_nlogn &&
      recipe.name != RecipeName::completion_time) {
    recipe_base(recipe);
  }
}

RelationChain recipe_chain(const ConstructionRecipe& recipe) {
  validate(recipe);
  switch (recipe.name) {
    case RecipeName::signing:
      return signing_chain(recipe_base(recipe));
    case RecipeName::mgon:
      return mgon_chain(required_count(recipe, "m"));
    case RecipeName::i2_permutahedron:
      return i2_chain(recipe_base(recipe), required_count(recipe, "m"));
    case RecipeName::a_permutahedron:
      return a_permutahedron_chain(recipe_base(recipe), recipe_network(recipe));
    case RecipeName::b_permutahedron:
      return b_permutahedron_chain(recipe_base(recipe), recipe_network(recipe));
    case RecipeName::d_permutahedron:
      return d_permutahedron_chain(recipe_base(recipe), recipe_network(recipe));
    case RecipeName::parity:
      return parity_chain(required_count(recipe, "n"), param(recipe, "parity").value_or("odd") == "odd");
    case RecipeName::huffman_quadratic:
      return huffman_quadratic_chain(required_count(recipe, "n"));
    case RecipeName::huffman_nlogn: {
      const std::size_t n = required_count(recipe, "n");
      return huffman_nlogn_chain(n, n >= 3 ? recipe_network(recipe) : ComparatorSeq{n, {}, SeqOrder::application});
    }
    case RecipeName::completion_time:
      return completion_time_chain(parse_list(*param(recipe, "p"), recipe_backend(recipe)));
  }
  throw InvalidArgument("unknown recipe");
}

std::string recipe_label(const ConstructionRecipe& recipe) {
  std::string label(to_string(recipe.name));
  for (const auto& [key, value] : recipe.params) label += " " + key + "=" + value;
  return label;
}

ExtendedFormulation build_recipe(const ConstructionRecipe& recipe) {
  ExtendedFormulation ef = build_extension(recipe_chain(recipe));
  ef.label = recipe_label(recipe);
  return ef;
}

ExpectedSize expected_size(const ConstructionRecipe& recipe) {
  validate(recipe);
  ExpectedSize out;
  auto base_counts = [&](std::size_t& f, std::size_t& nprime) {
    const std::string b = base_text(recipe);
    const std::size_t n = recipe_dimension(recipe);
    if (b == "simplex") {
      f = n;
      nprime = n - 1;
    } else if (b == "segment") {
      f = 2;
      nprime = 1;
    } else {
      f = 0;
      nprime = 0;
    }
  };
  // r(k) = 2 + floor(log2(k - 1)) for the stride sequences.
  auto stride_len = [](std::size_t k) {
    std::size_t fl = 0;
    while ((std::size_t{2} << fl) <= k - 1) ++fl;
    return 2 * (2 + fl) - 3;
  };

  switch (recipe.name) {
    case RecipeName::signing: {
      const std::size_t n = recipe_dimension(recipe);
      std::size_t f = 0, np = 0;
      base_counts(f, np);
      out = {f + 2 * n, n + n * n, np + n, {}};
      break;
    }
    case RecipeName::mgon:
    case RecipeName::i2_permutahedron: {
      const std::size_t r = ceil_log2(required_count(recipe, "m"));
      std::size_t f = 0, np = 0;
      if (recipe.name == RecipeName::i2_permutahedron) base_counts(f, np);
      out = {f + 2 * r + 2, 2 * (r + 2), np + r + 1, {}};
      break;
    }
    case RecipeName::a_permutahedron:
    case RecipeName::b_permutahedron:
    case RecipeName::d_permutahedron: {
      const std::size_t n = recipe_dimension(recipe);
      const std::size_t s = recipe_network(recipe).size();
      std::size_t f = 0, np = 0;
      base_counts(f, np);
      std::size_t extra_rel = 0;
      if (recipe.name == RecipeName::b_permutahedron) extra_rel = n;
      if (recipe.name == RecipeName::d_permutahedron) extra_rel = 2 * (n - 1);
      const std::size_t rel = s + extra_rel;
      out = {f + 2 * rel, n * (1 + rel), np + rel, {}};
      break;
    }
    case RecipeName::parity: {
      const std::size_t n = required_count(recipe, "n");
      out = {4 * (n - 1), 2 * n * n, 2 * (n - 1), {}};
      break;
    }
    case RecipeName::huffman_quadratic: {
      const std::size_t n = required_count(recipe, "n");
      std::size_t ineq = 0, raw = 2;
      for (std::size_t k = 3; k <= n; ++k) {
        ineq += 2 * (2 * k - 3);
        raw += k * (2 * k - 2);
      }
      out = {ineq, raw, n * (n - 2), {}};
      break;
    }
    case RecipeName::huffman_nlogn: {
      const std::size_t n = required_count(recipe, "n");
      std::size_t rel = 0, raw = 2;
      for (std::size_t k = 3; k < n; ++k) {
        rel += stride_len(k);
        raw += k * (1 + stride_len(k));
      }
      if (n >= 3) {
        const std::size_t s = recipe_network(recipe).size();
        rel += s;
        raw += n * (1 + s);
      }
      out = {2 * rel, raw, rel, {}};
      break;
    }
    case RecipeName::completion_time: {
      const std::size_t n = recipe_dimension(recipe);
      std::size_t raw = 1;
      for (std::size_t k = 2; k <= n; ++k) raw += 2 * (k - 1) + k;
      out = {n * (n - 1), raw, n * (n - 1) / 2, {{"cube_dimension", n * (n - 1) / 2}}};
      break;
    }
  }
  return out;
}

}  // namespace reflekt
