#include "reflekt/serialize.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "reflekt/errors.hpp"

namespace reflekt {

using nlohmann::ordered_json;

namespace {

ordered_json scalars(std::span<const Scalar> v) {
  ordered_json out = ordered_json::array();
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

Vector read_scalars(const ordered_json& j, Backend backend) {
  if (!j.is_array()) throw InvalidArgument("expected an array of numbers");
  Vector out;
  for (const auto& e : j) {
    if (e.is_string()) {
      out.push_back(Scalar::parse(e.get<std::string>(), backend));
    } else if (e.is_number_integer()) {
      out.push_back(Scalar::integer(e.get<long>(), backend));
    } else if (e.is_number()) {
      if (backend == Backend::rational) {
        throw InvalidArgument("rational documents need exact numbers written as strings");
      }
      out.push_back(Scalar::from_double(e.get<double>()));
    } else {
      throw InvalidArgument("expected a number");
    }
  }
  return out;
}

ordered_json constraints(const std::vector<LinearConstraint>& rows) {
  ordered_json out = ordered_json::array();
  for (const auto& c : rows) {
    out.push_back({{"coeffs", scalars(c.coeffs)}, {"rhs", c.rhs.to_string()}});
  }
  return out;
}

ordered_json polyhedron_body(const HPolyhedron& p) {
  return {{"backend", std::string(to_string(p.backend()))},
          {"dim", p.dim()},
          {"ineqs", constraints(p.inequalities())},
          {"eqs", constraints(p.equations())}};
}

HPolyhedron read_polyhedron(const ordered_json& j) {
  const Backend backend = parse_backend(j.at("backend").get<std::string>());
  HPolyhedron p(j.at("dim").get<std::size_t>(), backend);
  for (const auto& c : j.at("ineqs")) {
    p.add_inequality(read_scalars(c.at("coeffs"), backend),
                     read_scalars(ordered_json::array({c.at("rhs")}), backend).front());
  }
  for (const auto& c : j.at("eqs")) {
    p.add_equation(read_scalars(c.at("coeffs"), backend),
                   read_scalars(ordered_json::array({c.at("rhs")}), backend).front());
  }
  return p;
}

ordered_json parse_document(std::string_view text, std::string_view kind) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("JSON document must be an object");
  if (j.value("schema", "") != kSchema) {
    throw InvalidArgument("unsupported schema '" + j.value("schema", "") + "', expected " +
                          std::string(kSchema));
  }
  if (j.value("kind", "") != kind) {
    throw InvalidArgument("expected a '" + std::string(kind) + "' document, got '" +
                          j.value("kind", "") + "'");
  }
  return j;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("invalid document: ") + e.what());
  }
}

ordered_json recipe_body(const ConstructionRecipe& recipe) {
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : recipe.params) params[k] = v;
  return {{"name", std::string(to_string(recipe.name))}, {"params", params}};
}

ConstructionRecipe read_recipe(const ordered_json& j) {
  ConstructionRecipe r;
  r.name = parse_recipe_name(j.at("name").get<std::string>());
  for (const auto& [k, v] : j.at("params").items()) {
    r.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  return r;
}

ordered_json ledger_body(const Ledger& l) {
  ordered_json extras = ordered_json::object();
  for (const auto& [k, v] : l.extras) extras[k] = v;
  return {{"raw_variables", l.raw_variables},
          {"inequalities", l.inequalities},
          {"equations", l.equations},
          {"base_inequalities", l.base_inequalities},
          {"base_equations", l.base_equations},
          {"relations", l.relations},
          {"reduced_variable_bound", l.reduced_variable_bound},
          {"reduced_variables", l.reduced_variables ? ordered_json(*l.reduced_variables) : ordered_json()},
          {"extras", extras}};
}

Ledger read_ledger(const ordered_json& j) {
  Ledger l;
  l.raw_variables = j.at("raw_variables").get<std::size_t>();
  l.inequalities = j.at("inequalities").get<std::size_t>();
  l.equations = j.at("equations").get<std::size_t>();
  l.base_inequalities = j.at("base_inequalities").get<std::size_t>();
  l.base_equations = j.at("base_equations").get<std::size_t>();
  l.relations = j.at("relations").get<std::size_t>();
  l.reduced_variable_bound = j.at("reduced_variable_bound").get<std::size_t>();
  if (!j.at("reduced_variables").is_null()) l.reduced_variables = j.at("reduced_variables").get<std::size_t>();
  for (const auto& [k, v] : j.at("extras").items()) l.extras[k] = v.get<std::size_t>();
  return l;
}

ordered_json size_body(const ExpectedSize& s) {
  ordered_json extras = ordered_json::object();
  for (const auto& [k, v] : s.extras) extras[k] = v;
  return {{"inequalities", s.inequalities},
          {"raw_variables", s.raw_variables},
          {"reduced_variables", s.reduced_variables},
          {"extras", extras}};
}

std::string number(const Scalar& s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", s.to_double());
  return buf;
}

std::vector<std::string> column_names(const ExtendedFormulation& ef) {
  if (ef.variable_names.size() == ef.q.dim()) return ef.variable_names;
  std::vector<std::string> out;
  for (std::size_t j = 0; j < ef.q.dim(); ++j) out.push_back("x" + std::to_string(j));
  return out;
}

Vector pulled_objective(const ExtendedFormulation& ef, const Vector* objective) {
  if (!objective) return zeros(ef.q.dim(), ef.backend());
  if (objective->size() != ef.output_dim()) throw DimensionError("objective dimension mismatch");
  return ef.projection.linear().transpose() * *objective;
}

}  // namespace

std::string to_json(const HPolyhedron& p) {
  ordered_json j = {{"schema", kSchema}, {"kind", "polyhedron"}};
  j.update(polyhedron_body(p));
  return j.dump(2);
}

HPolyhedron hpolyhedron_from_json(std::string_view text) {
  return guarded([&] { return read_polyhedron(parse_document(text, "polyhedron")); });
}

std::string to_json(const ExtendedFormulation& ef, const std::optional<ConstructionRecipe>& recipe) {
  ordered_json j = {{"schema", kSchema}, {"kind", "extended_formulation"}, {"label", ef.label}};
  j.update(polyhedron_body(ef.q));
  j["variables"] = ef.variable_names;
  j["blocks"] = ef.blocks;
  ordered_json matrix = ordered_json::array();
  for (std::size_t r = 0; r < ef.projection.out_dim(); ++r) {
    matrix.push_back(scalars(ef.projection.linear().row(r)));
  }
  j["projection"] = {{"matrix", matrix}, {"offset", scalars(ef.projection.offset())}};
  j["ledger"] = ledger_body(ef.ledger);
  if (recipe) j["recipe"] = recipe_body(*recipe);
  return j.dump(2);
}

LoadedFormulation formulation_from_json(std::string_view text) {
  return guarded([&] {
    const ordered_json j = parse_document(text, "extended_formulation");
    LoadedFormulation out;
    out.ef.q = read_polyhedron(j);
    const Backend backend = out.ef.q.backend();
    out.ef.label = j.value("label", "");
    out.ef.variable_names = j.at("variables").get<std::vector<std::string>>();
    out.ef.blocks = j.at("blocks").get<std::vector<std::size_t>>();
    const auto& pj = j.at("projection");
    Matrix m(0, out.ef.q.dim(), backend);
    for (const auto& row : pj.at("matrix")) m.append_row(read_scalars(row, backend));
    out.ef.projection = AffineMap(std::move(m), read_scalars(pj.at("offset"), backend));
    out.ef.ledger = read_ledger(j.at("ledger"));
    if (j.contains("recipe")) out.recipe = read_recipe(j.at("recipe"));
    if (out.ef.variable_names.size() != out.ef.q.dim()) {
      throw InvalidArgument("variable name count differs from the dimension");
    }
    return out;
  });
}

std::string to_json(const ConstructionRecipe& recipe) {
  ordered_json j = {{"schema", kSchema}, {"kind", "recipe"}};
  j.update(recipe_body(recipe));
  return j.dump(2);
}

ConstructionRecipe recipe_from_json(std::string_view text) {
  return guarded([&] { return read_recipe(parse_document(text, "recipe")); });
}

std::string to_json(const ComparatorSeq& seq) {
  ordered_json pairs = ordered_json::array();
  for (const auto& c : seq.comparators) pairs.push_back({c.k, c.l});
  ordered_json j = {{"schema", kSchema},
                    {"kind", "comparators"},
                    {"n", seq.n},
                    {"order", seq.order == SeqOrder::application ? "application" : "relation"},
                    {"comparators", pairs}};
  return j.dump();
}

ComparatorSeq comparator_seq_from_json(std::string_view text) {
  return guarded([&] {
    const ordered_json j = parse_document(text, "comparators");
    ComparatorSeq seq;
    seq.n = j.at("n").get<std::size_t>();
    const std::string order = j.at("order").get<std::string>();
    if (order == "application") {
      seq.order = SeqOrder::application;
    } else if (order == "relation") {
      seq.order = SeqOrder::relation;
    } else {
      throw InvalidArgument("order must be application or relation");
    }
    for (const auto& p : j.at("comparators")) {
      seq.comparators.push_back({p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>()});
    }
    seq.validate();
    return seq;
  });
}

std::string to_json(const VertexSet& set) {
  ordered_json pts = ordered_json::array();
  for (const auto& p : set.points) pts.push_back(scalars(p));
  ordered_json j = {{"schema", kSchema},
                    {"kind", "vertex_set"},
                    {"label", set.label},
                    {"dim", set.dim},
                    {"count", set.size()},
                    {"points", pts}};
  return j.dump(2);
}

std::string to_json(const VerificationReport& report, bool include_timing) {
  ordered_json hyps = ordered_json::array();
  for (const auto& h : report.hypotheses) {
    hyps.push_back({{"name", h.name}, {"pass", h.pass}, {"detail", h.detail}});
  }
  ordered_json j = {{"schema", kSchema},
                    {"kind", "verification_report"},
                    {"label", report.label},
                    {"passed", report.passed()},
                    {"vertices",
                     {{"total", report.vertices.total},
                      {"passed", report.vertices.passed},
                      {"lifted", report.vertices.lifted}}},
                    {"objectives",
                     {{"total", report.objectives.total},
                      {"passed", report.objectives.passed},
                      {"max_deviation", report.objectives.max_deviation}}}};
  if (report.size) {
    j["size"] = {{"expected", size_body(report.size->expected)},
                 {"actual", size_body(report.size->actual)},
                 {"pass", report.size->pass},
                 {"diffs", report.size->diffs}};
  }
  j["hypotheses"] = hyps;
  j["failures"] = report.failures;
  if (include_timing) j["wall_seconds"] = report.wall_seconds;
  return j.dump(2);
}

std::string to_lp_format(const ExtendedFormulation& ef, const Vector* objective) {
  const auto names = column_names(ef);
  const Vector c = pulled_objective(ef, objective);
  std::ostringstream os;
  auto terms = [&](std::span<const Scalar> coeffs) {
    bool any = false;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j].sign(0.0) == 0) continue;
      const double v = coeffs[j].to_double();
      os << (v < 0 ? " - " : (any ? " + " : " ")) << number(coeffs[j].abs()) << ' ' << names[j];
      any = true;
    }
    if (!any && !names.empty()) os << " 0 " << names.front();
  };

  os << "\\ " << kSchema << ' ' << ef.label << '\n';
  for (std::size_t r = 0; r < ef.projection.out_dim(); ++r) {
    os << "\\ y" << r << " =";
    terms(ef.projection.linear().row(r));
    os << " + " << number(ef.projection.offset()[r]) << '\n';
  }
  os << "Maximize\n obj:";
  terms(c);
  os << "\nSubject To\n";
  std::size_t idx = 0;
  for (const auto& row : ef.q.inequalities()) {
    os << " c" << ++idx << ':';
    terms(row.coeffs);
    os << " <= " << number(row.rhs) << '\n';
  }
  idx = 0;
  for (const auto& row : ef.q.equations()) {
    os << " e" << ++idx << ':';
    terms(row.coeffs);
    os << " = " << number(row.rhs) << '\n';
  }
  os << "Bounds\n";
  for (const auto& n : names) os << ' ' << n << " free\n";
  os << "End\n";
  return os.str();
}

std::string to_mps(const ExtendedFormulation& ef, const Vector* objective) {
  const auto names = column_names(ef);
  const Vector c = pulled_objective(ef, objective);
  const auto& ineqs = ef.q.inequalities();
  const auto& eqs = ef.q.equations();
  std::ostringstream os;
  os << "NAME          reflekt\n";
  os << "OBJSENSE\n    MAX\n";
  os << "ROWS\n N  obj\n";
  for (std::size_t i = 0; i < ineqs.size(); ++i) os << " L  c" << i + 1 << '\n';
  for (std::size_t i = 0; i < eqs.size(); ++i) os << " E  e" << i + 1 << '\n';
  os << "COLUMNS\n";
  for (std::size_t j = 0; j < names.size(); ++j) {
    auto entry = [&](const std::string& row, const Scalar& v) {
      if (v.sign(0.0) == 0) return;
      os << "    " << names[j] << "  " << row << "  " << number(v) << '\n';
    };
    entry("obj", c[j]);
    for (std::size_t i = 0; i < ineqs.size(); ++i) entry("c" + std::to_string(i + 1), ineqs[i].coeffs[j]);
    for (std::size_t i = 0; i < eqs.size(); ++i) entry("e" + std::to_string(i + 1), eqs[i].coeffs[j]);
  }
  os << "RHS\n";
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    if (ineqs[i].rhs.sign(0.0) != 0) os << "    RHS  c" << i + 1 << "  " << number(ineqs[i].rhs) << '\n';
  }
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (eqs[i].rhs.sign(0.0) != 0) os << "    RHS  e" << i + 1 << "  " << number(eqs[i].rhs) << '\n';
  }
  os << "BOUNDS\n";
  for (const auto& n : names) os << " FR BND  " << n << '\n';
  os << "ENDATA\n";
  return os.str();
}

}  // namespace reflekt
