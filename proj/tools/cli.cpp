#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "reflekt/constructions.hpp"
#include "reflekt/errors.hpp"
#include "reflekt/oracles.hpp"
#include "reflekt/serialize.hpp"
#include "reflekt/verify.hpp"

namespace reflekt::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes next to the target and renames, so readers never see a partial file.
void write_atomically(const std::string& path, const std::string& text) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw UsageError("write to '" + path + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw UsageError("cannot move output into '" + path + "'");
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  } else {
    write_atomically(path, text.back() == '\n' ? text : text + '\n');
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

Vector parse_point(const std::string& text, Backend backend) {
  Vector out;
  for (const auto& item : split(text, ',')) out.push_back(Scalar::parse(item, backend));
  if (out.empty()) throw InvalidArgument("empty point '" + text + "'");
  return out;
}

std::vector<Vector> parse_points(const std::string& text, Backend backend) {
  std::vector<Vector> out;
  for (const auto& item : split(text, ';')) out.push_back(parse_point(item, backend));
  if (out.empty()) throw InvalidArgument("no points given");
  return out;
}

struct RecipeFlags {
  std::string name;
  std::string file;
  std::string n, m, parity, base, p, network, backend;
  std::vector<std::string> pairs;

  bool given() const { return !name.empty() || !file.empty(); }
};

void add_recipe_flags(CLI::App* sub, RecipeFlags& f) {
  sub->add_option("--recipe", f.name, "Recipe name");
  sub->add_option("--recipe-file", f.file, "JSON recipe document");
  sub->add_option("--n", f.n, "Dimension");
  sub->add_option("--m", f.m, "Polygon order");
  sub->add_option("--parity", f.parity, "odd | even");
  sub->add_option("--base", f.base, "Base point 'a,b,...', points 'a,b;c,d', simplex or segment");
  sub->add_option("--p", f.p, "Processing times");
  sub->add_option("--network", f.network, "batcher | insertion | none");
  sub->add_option("--backend", f.backend, "rational | float");
  sub->add_option("params", f.pairs, "Extra key=value recipe parameters");
}

ConstructionRecipe make_recipe(const RecipeFlags& f) {
  if (!f.name.empty() && !f.file.empty()) throw UsageError("use either --recipe or --recipe-file");
  ConstructionRecipe r;
  if (!f.file.empty()) {
    r = recipe_from_json(read_file(f.file));
  } else if (!f.name.empty()) {
    r.name = parse_recipe_name(f.name);
  } else {
    throw UsageError("a recipe is required (--recipe or --recipe-file)");
  }
  auto set = [&](const char* key, const std::string& v) {
    if (!v.empty()) r.params[key] = v;
  };
  set("n", f.n);
  set("m", f.m);
  set("parity", f.parity);
  set("base", f.base);
  set("p", f.p);
  set("network", f.network);
  set("backend", f.backend);
  for (const auto& kv : f.pairs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + kv + "'");
    r.params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  validate(r);
  return r;
}

struct OracleFlags {
  std::string kind;
};

std::size_t count_flag(const std::string& v, const char* name) {
  if (v.empty()) throw UsageError(std::string("--") + name + " is required for this oracle");
  std::size_t pos = 0;
  unsigned long out = 0;
  try {
    out = std::stoul(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size()) throw InvalidArgument(std::string("--") + name + " must be a count, got '" + v + "'");
  return out;
}

VertexSet union_of(const std::vector<Vector>& points, VertexSet (*orbit)(const Vector&)) {
  std::vector<Vector> all;
  for (const auto& p : points) {
    auto o = orbit(p);
    all.insert(all.end(), o.points.begin(), o.points.end());
  }
  return make_vertex_set(points.front().size(), all, "orbit");
}

VertexSet make_oracle(const std::string& kind, const RecipeFlags& f,
                      const std::optional<ConstructionRecipe>& recipe) {
  const Backend backend = f.backend.empty() ? Backend::rational : parse_backend(f.backend);
  auto points = [&](Backend b) {
    if (f.base.empty()) throw UsageError("--base is required for this oracle");
    return parse_points(f.base, b);
  };
  if (kind == "recipe") {
    if (!recipe) throw UsageError("--oracle recipe needs a recipe (none embedded or given)");
    return recipe_oracle(*recipe);
  }
  if (kind == "permutation") return union_of(points(backend), permutation_orbit);
  if (kind == "signed") return union_of(points(backend), signed_orbit);
  if (kind == "even_signed") return union_of(points(backend), even_signed_orbit);
  if (kind == "sign") return sign_orbit(points(backend));
  if (kind == "mgon") return mgon_orbit(count_flag(f.m, "m"));
  if (kind == "i2") return i2_orbit(points(Backend::floating), count_flag(f.m, "m"));
  if (kind == "huffman") return huffman_vectors(count_flag(f.n, "n"));
  if (kind == "parity") {
    if (f.parity != "odd" && f.parity != "even") throw UsageError("--parity odd|even is required");
    return parity_vertices(count_flag(f.n, "n"), f.parity == "odd");
  }
  if (kind == "completion_time") {
    if (f.p.empty()) throw UsageError("--p is required for this oracle");
    return completion_time_vertices(parse_point(f.p, backend));
  }
  throw UsageError("unknown oracle '" + kind + "'");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("REFLEKT_SEED"); env && *env) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(env, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != std::string(env).size()) throw UsageError(std::string("REFLEKT_SEED is not a number: ") + env);
    return v;
  }
  return 0;
}

std::string stats_text(const ExtendedFormulation& ef, const std::optional<ConstructionRecipe>& recipe,
                       const std::string& format, bool& matches) {
  const ExtendedFormulation reduced = eliminate_equations(ef);
  const Ledger& l = ef.ledger;
  const std::size_t reduced_vars = *reduced.ledger.reduced_variables;
  std::optional<SizeCheck> check;
  if (recipe) check = size_report(ef, expected_size(*recipe));
  matches = !check || check->pass;

  if (format == "json") {
    nlohmann::ordered_json j = {{"schema", kSchema},
                                {"kind", "stats"},
                                {"label", ef.label},
                                {"inequalities", l.inequalities},
                                {"equations", l.equations},
                                {"raw_variables", l.raw_variables},
                                {"reduced_variables", reduced_vars},
                                {"reduced_variable_bound", l.reduced_variable_bound},
                                {"relations", l.relations},
                                {"base_inequalities", l.base_inequalities},
                                {"base_equations", l.base_equations},
                                {"extras", l.extras}};
    if (check) {
      j["expected"] = {{"inequalities", check->expected.inequalities},
                       {"raw_variables", check->expected.raw_variables},
                       {"reduced_variables", check->expected.reduced_variables},
                       {"extras", check->expected.extras}};
      j["matches"] = check->pass;
    } else {
      j["expected"] = nullptr;
      j["matches"] = nullptr;
    }
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  auto row = [&](const std::string& name, std::size_t value, std::optional<std::size_t> want) {
    os << "  " << name;
    for (std::size_t i = name.size(); i < 24; ++i) os << ' ';
    os << value;
    if (want) os << "  (expected " << *want << (*want == value ? ")" : ", MISMATCH)");
    os << '\n';
  };
  auto want = [&](std::size_t ExpectedSize::*field) -> std::optional<std::size_t> {
    if (!check) return std::nullopt;
    return check->expected.*field;
  };
  os << ef.label << '\n';
  row("inequalities", l.inequalities, want(&ExpectedSize::inequalities));
  row("equations", l.equations, std::nullopt);
  row("raw variables", l.raw_variables, want(&ExpectedSize::raw_variables));
  row("reduced variables", reduced_vars, want(&ExpectedSize::reduced_variables));
  row("reduced bound", l.reduced_variable_bound, std::nullopt);
  row("relations", l.relations, std::nullopt);
  row("base inequalities", l.base_inequalities, std::nullopt);
  for (const auto& [k, v] : l.extras) {
    std::optional<std::size_t> w;
    if (check) {
      auto it = check->expected.extras.find(k);
      if (it != check->expected.extras.end()) w = it->second;
    }
    row(k, v, w);
  }
  return os.str();
}

int dispatch(CLI::App& app, std::ostream& out, std::ostream& err, int argc, const char* const* argv) {
  app.require_subcommand(1);

  // build
  RecipeFlags build_flags;
  std::string build_out;
  auto* build = app.add_subcommand("build", "Build an extended formulation from a recipe");
  add_recipe_flags(build, build_flags);
  build->add_option("--out", build_out, "Output file (default: stdout)");

  // verify
  RecipeFlags verify_flags;
  std::string verify_ef, verify_oracle, verify_format = "table", verify_out;
  std::optional<std::uint64_t> verify_seed;
  std::size_t verify_objectives = 50;
  double verify_tol = kDefaultTolerance;
  bool verify_timing = false, verify_lp_only = false;
  auto* verify = app.add_subcommand("verify", "Check that a formulation projects onto an oracle polytope");
  add_recipe_flags(verify, verify_flags);
  verify->add_option("--ef", verify_ef, "Formulation JSON");
  verify->add_option("--oracle", verify_oracle,
                     "recipe|permutation|signed|even_signed|sign|mgon|i2|huffman|parity|completion_time");
  verify->add_option("--objectives", verify_objectives, "Number of random objectives");
  verify->add_option("--seed", verify_seed, "Objective seed (falls back to REFLEKT_SEED)");
  verify->add_option("--tolerance", verify_tol, "Float tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--format", verify_format, "table | json")->check(CLI::IsMember({"table", "json"}));
  verify->add_option("--out", verify_out, "Report file (default: stdout)");
  verify->add_flag("--timing", verify_timing, "Include wall time in JSON reports");
  verify->add_flag("--lp-only", verify_lp_only, "Decide every vertex by LP, never by a lifted point");

  // oracle
  RecipeFlags oracle_flags;
  std::string oracle_kind, oracle_out;
  auto* oracle = app.add_subcommand("oracle", "Print a brute-force vertex set as JSON");
  add_recipe_flags(oracle, oracle_flags);
  oracle->add_option("--kind", oracle_kind, "Oracle kind (default: from --recipe)");
  oracle->add_option("--out", oracle_out, "Output file (default: stdout)");

  // export
  std::string export_ef, export_format = "json", export_objective, export_out;
  auto* exp = app.add_subcommand("export", "Write a formulation as JSON, LP or MPS");
  exp->add_option("--ef", export_ef, "Formulation JSON")->required();
  exp->add_option("--format", export_format, "json | lp | mps")->check(CLI::IsMember({"json", "lp", "mps"}));
  exp->add_option("--objective", export_objective, "Objective on the output space, 'c1,c2,...'");
  exp->add_option("--out", export_out, "Output file (default: stdout)");

  // stats
  RecipeFlags stats_flags;
  std::string stats_ef, stats_format = "table";
  auto* stats = app.add_subcommand("stats", "Print the size ledger");
  add_recipe_flags(stats, stats_flags);
  stats->add_option("--ef", stats_ef, "Formulation JSON");
  stats->add_option("--format", stats_format, "table | json")->check(CLI::IsMember({"table", "json"}));

  app.parse(argc, argv);

  if (build->parsed()) {
    const ConstructionRecipe recipe = make_recipe(build_flags);
    ExtendedFormulation ef = build_recipe(recipe);
    emit(to_json(ef, recipe), build_out, out);
    if (!build_out.empty() && build_out != "-") {
      err << "wrote " << build_out << ": " << ef.ledger.inequalities << " inequalities, "
          << ef.ledger.raw_variables << " variables\n";
    }
    return kOk;
  }

  if (verify->parsed()) {
    if (!verify_ef.empty() && verify_flags.given()) throw UsageError("use either --ef or a recipe, not both");
    if (verify_ef.empty() && !verify_flags.given()) throw UsageError("verify needs --ef or a recipe");
    VerifyOptions options;
    options.objectives = verify_objectives;
    options.seed = resolve_seed(verify_seed);
    options.tolerance = verify_tol;
    options.chain_lifts = !verify_lp_only;
    VerificationReport report;
    if (verify_ef.empty()) {
      const ConstructionRecipe recipe = make_recipe(verify_flags);
      if (!verify_oracle.empty() && verify_oracle != "recipe") {
        throw UsageError("--oracle only applies to --ef; recipes bring their own oracle");
      }
      report = verify_recipe(recipe, options);
    } else {
      const LoadedFormulation loaded = formulation_from_json(read_file(verify_ef));
      const VertexSet o =
          make_oracle(verify_oracle.empty() ? "recipe" : verify_oracle, verify_flags, loaded.recipe);
      report = verify_projection_equality(loaded.ef, o, options);
      if (loaded.recipe) report.size = size_report(loaded.ef, expected_size(*loaded.recipe));
    }
    emit(verify_format == "json" ? to_json(report, verify_timing) : report_table(report), verify_out, out);
    return report.passed() ? kOk : kVerificationFailed;
  }

  if (oracle->parsed()) {
    std::optional<ConstructionRecipe> recipe;
    if (!oracle_flags.name.empty() || !oracle_flags.file.empty()) {
      if (!oracle_kind.empty() && oracle_kind != "recipe") throw UsageError("use either --kind or --recipe");
      recipe = make_recipe(oracle_flags);
    }
    const std::string kind = oracle_kind.empty() ? "recipe" : oracle_kind;
    emit(to_json(make_oracle(kind, oracle_flags, recipe)), oracle_out, out);
    return kOk;
  }

  if (exp->parsed()) {
    const LoadedFormulation loaded = formulation_from_json(read_file(export_ef));
    std::optional<Vector> objective;
    if (!export_objective.empty()) objective = parse_point(export_objective, loaded.ef.backend());
    const Vector* c = objective ? &*objective : nullptr;
    std::string text;
    if (export_format == "json") {
      if (objective) throw UsageError("--objective applies to lp and mps only");
      text = to_json(loaded.ef, loaded.recipe);
    } else if (export_format == "lp") {
      text = to_lp_format(loaded.ef, c);
    } else {
      text = to_mps(loaded.ef, c);
    }
    emit(text, export_out, out);
    return kOk;
  }

  if (stats->parsed()) {
    if (!stats_ef.empty() && stats_flags.given()) throw UsageError("use either --ef or a recipe, not both");
    ExtendedFormulation ef;
    std::optional<ConstructionRecipe> recipe;
    if (stats_ef.empty()) {
      recipe = make_recipe(stats_flags);
      ef = build_recipe(*recipe);
    } else {
      LoadedFormulation loaded = formulation_from_json(read_file(stats_ef));
      ef = std::move(loaded.ef);
      recipe = loaded.recipe;
    }
    bool matches = true;
    emit(stats_text(ef, recipe, stats_format, matches), "", out);
    return matches ? kOk : kVerificationFailed;
  }
  return kUsage;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extended formulations from reflection relations", "reflekt"};
  try {
    return dispatch(app, out, err, argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version come through here with exit code 0.
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const BackendMismatch& e) {
    err << "backend error: " << e.what() << '\n';
    return kNumeric;
  } catch (const EmptyPolyhedron& e) {
    err << "empty polyhedron: " << e.what() << '\n';
    return kNumeric;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"reflekt"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace reflekt::cli
