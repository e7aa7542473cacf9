#include "maxtype/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxtype/experiments.hpp"
#include "maxtype/parallel.hpp"

#ifndef MAXTYPE_DEFAULT_GOLDEN_DIR
#define MAXTYPE_DEFAULT_GOLDEN_DIR "golden"
#endif

namespace maxtype::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  double p0 = 2.0;
  int nmax = 1;
  std::string gen = "first";
  std::string mode;
  std::string space_mode;
  std::string op;
  std::optional<double> p;
  long precision_bits = 128;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> trials;
  std::uint64_t budget = 10000;
  std::string out;
  std::string format = "json";
  unsigned threads = 1;
  std::string params_file;
  std::string function = "extremal";
  std::string golden;
  bool dump_points = false;
};

std::filesystem::path golden_dir() {
  if (const char* env = std::getenv("MAXTYPE_GOLDEN_DIR"); env && *env) return env;
  return MAXTYPE_DEFAULT_GOLDEN_DIR;
}

ExtScalar json_scalar(const nlohmann::json& j) {
  if (j.is_string()) return ExtScalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return ExtScalar(j.get<long long>());
  if (j.is_number()) return ExtScalar(j.get<double>());
  throw UsageError("parameter entries must be numbers or numeric strings");
}

mpz_class json_integer(const nlohmann::json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  if (j.is_number_unsigned() || j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  throw UsageError("tau entries must be integers");
}

// {"N": 2, "tau": [[1], [2, 2]], "F": [[1], [1, 1]], "m": [2, 4], "G": [...], "p0": 2}
GenParams load_params(const std::string& path, Generation generation) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open parameter file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("bad parameter file " + path + ": " + e.what());
  }
  GenParams P;
  try {
    P.N = j.at("N").get<int>();
    for (const auto& row : j.at("tau")) {
      std::vector<mpz_class> r;
      for (const auto& v : row) r.push_back(json_integer(v));
      P.tau_table.push_back(std::move(r));
    }
    for (const auto& row : j.at("F")) {
      std::vector<ExtScalar> r;
      for (const auto& v : row) r.push_back(json_scalar(v));
      P.F_table.push_back(std::move(r));
    }
    for (const auto& v : j.at("m")) P.m_seq.push_back(json_scalar(v));
    if (j.contains("G")) {
      for (const auto& v : j.at("G")) P.G_seq.push_back(json_scalar(v));
    }
    if (j.contains("p0")) P.p0 = j.at("p0").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("bad parameter file " + path + ": " + e.what());
  }
  const auto violations = validate_params(P, generation);
  if (!violations.empty()) throw GeneratorError("invalid parameters: " + violations.front().message);
  P.d_seq = normalization_weights(P, generation);
  return P;
}

Generation parse_generation(const std::string& g) {
  if (g == "first") return Generation::first;
  if (g == "second") return Generation::second;
  throw UsageError("--gen must be first, second or glued here");
}

Operator parse_op(const std::string& op, Operator fallback) {
  if (op.empty()) return fallback;
  if (op == "centered") return Operator::centered;
  if (op == "noncentered") return Operator::noncentered;
  throw UsageError("--op must be centered or noncentered");
}

GenParams params_for(const Flags& f, Generation g) {
  if (!f.params_file.empty()) return load_params(f.params_file, g);
  return derive_sequences(f.p0, f.nmax, g);
}

Mode resolve_mode(const std::string& requested, const std::vector<std::pair<GenParams, Generation>>& parts) {
  if (requested == "explicit") return Mode::explicit_points;
  if (requested == "quotient") return Mode::quotient;
  if (!requested.empty()) throw UsageError("--mode must be explicit or quotient");
  mpz_class total = 0;
  for (const auto& [P, g] : parts) total += point_count(P, g);
  return total <= mpz_class(static_cast<unsigned long>(kDefaultPointCap)) ? Mode::explicit_points : Mode::quotient;
}

GeneratedSpace build_space(const Flags& f, const std::string& mode_flag) {
  std::vector<std::pair<GenParams, Generation>> parts;
  if (f.gen == "glued") {
    parts.emplace_back(params_for(f, Generation::first), Generation::first);
    parts.emplace_back(params_for(f, Generation::second), Generation::second);
  } else {
    const Generation g = parse_generation(f.gen);
    parts.emplace_back(params_for(f, g), g);
  }
  const Mode mode = resolve_mode(mode_flag, parts);
  GeneratedSpace gs = build(parts[0].first, parts[0].second, mode);
  if (parts.size() == 2) gs = glue(gs, build(parts[1].first, parts[1].second, mode));
  return gs;
}

std::string space_key(const Flags& f) {
  if (!f.params_file.empty()) {
    std::string stem = std::filesystem::path(f.params_file).filename().string();
    return stem.substr(0, stem.find('.'));
  }
  std::ostringstream os;
  os << (f.gen == "first" ? "x" : f.gen == "second" ? "y" : "z") << "_p" << f.p0 << "_n" << f.nmax;
  std::string key = os.str();
  std::replace(key.begin(), key.end(), '.', '_');
  return key;
}

struct Golden {
  ExtScalar value;
  std::string ref;
};

std::optional<Golden> find_golden(const Flags& f, Operator op, double p, std::size_t points) {
  const std::string name = f.golden.empty() ? "rwt_" + space_key(f) + "_" + to_string(op) + ".txt" : f.golden;
  const std::filesystem::path path = golden_dir() / name;
  std::ifstream in(path);
  if (!in) {
    if (!f.golden.empty()) throw UsageError("golden file not found: " + path.string());
    return std::nullopt;
  }
  std::string key;
  std::string value;
  std::optional<ExtScalar> max;
  bool compatible = true;
  while (in >> key >> value) {
    if (key == "max") max = ExtScalar::parse(value);
    if (key == "p") compatible = compatible && std::stod(value) == p;
    if (key == "points") compatible = compatible && std::stoull(value) == points;
    if (key == "precision") compatible = compatible && std::stol(value) == default_precision();
  }
  if (!max || !compatible) return std::nullopt;
  return Golden{*max, name};
}

Report gen_info(const Flags& f) {
  const GeneratedSpace gs = build_space(f, f.mode);
  Report r;
  r.experiment = "gen-info";
  r.add_param("gen", f.gen);
  r.add_param("mode", to_string(gs.space.mode()));
  r.add_param("points", gs.space.point_count().get_str());
  r.add_param("orbits", std::to_string(gs.space.size()));
  r.add_param("precision_bits", std::to_string(default_precision()));
  std::size_t violations = 0;
  for (const PartInfo& part : gs.parts) {
    const GenParams& P = part.params;
    for (const Violation& v : validate_params(P, part.generation)) {
      r.notes.push_back(v.code + ": " + v.message);
      ++violations;
    }
    for (int n = 1; n <= P.N; ++n) {
      std::string taus;
      for (int i = 1; i <= n; ++i) taus += (i > 1 ? " " : "") + P.tau(n, i).get_str();
      Row row;
      row.txt("part", std::to_string(part.part)).txt("gen", to_string(part.generation)).txt("n", std::to_string(n));
      row.txt("tau", taus).num("m", P.m(n)).num("d", P.d(n));
      if (part.generation == Generation::second) row.num("G", P.G(n));
      row.num("level_mass", P.d(n) * level_weight(P, n, part.generation));
      r.rows.push_back(std::move(row));
    }
  }
  Row total;
  total.txt("part", "all").num("total_mass", gs.space.total_mass());
  total.num("violations", ExtScalar(static_cast<unsigned long>(violations)));
  total.assert_that("violations", "<=", ExtScalar(0), "parameter constraints");
  r.rows.push_back(std::move(total));
  if (f.dump_points) {
    for (std::size_t k = 0; k < gs.space.size(); ++k) {
      Row row;
      row.txt("point", gs.space.label(k).to_string()).num("mass", gs.space.mass(k));
      row.txt("multiplicity", gs.space.multiplicity(k).get_str());
      r.rows.push_back(std::move(row));
    }
  }
  return r;
}

Report eval_maximal(const Flags& f) {
  const GeneratedSpace gs = build_space(f, f.mode);
  const Operator op = parse_op(f.op, Operator::centered);
  WeightedFunction fn;
  const std::string& choice = f.function;
  if (choice == "constant") {
    fn = WeightedFunction::constant(gs.space.size(), ExtScalar(1));
  } else if (choice.rfind("extremal", 0) == 0) {
    const int n = choice.size() > 9 ? std::stoi(choice.substr(9)) : gs.parts.front().params.N;
    fn = extremal_function(gs, 0, n);
  } else if (choice.rfind("dirac:", 0) == 0) {
    const std::size_t at = std::stoul(choice.substr(6));
    if (at >= gs.space.size()) throw UsageError("dirac index out of range");
    fn = WeightedFunction::dirac(gs.space.size(), at);
  } else if (choice.rfind("random:", 0) == 0) {
    fn = random_function(gs.space.size(), f.seed, std::stoull(choice.substr(7)));
  } else {
    throw UsageError("--function must be constant, extremal[:n], dirac:INDEX or random:TRIAL");
  }
  const WeightedFunction mf = maximal(gs, fn, op);
  Report r;
  r.experiment = "eval-maximal";
  r.add_param("gen", f.gen);
  r.add_param("op", to_string(op));
  r.add_param("function", choice);
  r.add_param("mode", to_string(gs.space.mode()));
  r.add_param("precision_bits", std::to_string(default_precision()));
  for (std::size_t k = 0; k < gs.space.size(); ++k) {
    Row row;
    row.txt("point", gs.space.label(k).to_string()).txt("multiplicity", gs.space.multiplicity(k).get_str());
    row.num("f", fn[k]).num("Mf", mf[k]).assert_that("Mf", ">=", fn[k], "Mf >= f pointwise");
    r.rows.push_back(std::move(row));
  }
  return r;
}

Report dispatch(const std::string& command, const Flags& f) {
  if (command == "gen-info") return gen_info(f);
  if (command == "verify-balls") return verify_balls(build_space(f, f.mode));
  if (command == "eval-maximal") return eval_maximal(f);
  if (command == "growth-table") {
    const Mode mode = f.mode == "explicit" ? Mode::explicit_points : Mode::quotient;
    if (!f.mode.empty() && f.mode != "explicit" && f.mode != "quotient") throw UsageError("bad --mode");
    if (!f.params_file.empty()) throw UsageError("growth-table runs on the p0 presets only");
    return growth_table(f.p0, f.nmax, parse_generation(f.gen), parse_op(f.op, Operator::centered), mode);
  }
  if (command == "strong11-check") {
    if (f.gen != "second") throw UsageError("strong11-check needs --gen second");
    return strong11_check(build_space(f, f.mode), f.trials.value_or(1000), f.seed, parse_op(f.op, Operator::centered));
  }
  if (command == "rwt-search") {
    SearchOptions opt;
    if (f.mode.empty() || f.mode == "exhaustive") {
      opt.mode = SearchMode::exhaustive;
    } else if (f.mode == "random") {
      opt.mode = SearchMode::random;
    } else {
      throw UsageError("rwt-search --mode must be exhaustive or random");
    }
    opt.budget = f.budget;
    opt.seed = f.seed;
    const std::string space_mode =
        f.space_mode.empty() && opt.mode == SearchMode::exhaustive ? "explicit" : f.space_mode;
    const GeneratedSpace gs = build_space(f, space_mode);
    const Operator op = parse_op(f.op, Operator::noncentered);
    const double p = f.p.value_or(f.p0);
    if (opt.mode == SearchMode::exhaustive) {
      if (gs.space.size() > kExhaustiveCap) {
        throw UsageError("exhaustive search needs at most " + std::to_string(kExhaustiveCap) + " points");
      }
      if (auto g = find_golden(f, op, p, gs.space.size())) opt.golden = std::make_pair(g->value, g->ref);
    }
    return rwt_search(gs, p, op, opt);
  }
  if (command == "dirac-rwt") {
    const GeneratedSpace gs = build_space(f, f.mode);
    return dirac_rwt_check(gs, f.p.value_or(f.p0), parse_op(f.op, Operator::noncentered));
  }
  if (command == "glue-check") {
    Flags fx = f;
    fx.gen = "first";
    Flags fy = f;
    fy.gen = "second";
    const GeneratedSpace A = build_space(fx, f.mode);
    const GeneratedSpace B = build(params_for(fy, Generation::second), Generation::second, A.space.mode());
    return glue_consistency_check(A, B, f.trials.value_or(500), f.seed);
  }
  throw UsageError("unknown command " + command);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact maximal operators on non-doubling metric measure spaces", "maxtype"};
  app.require_subcommand(1);
  Flags f;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen-info", "parameter tables and point counts"},
      {"verify-balls", "structural balls against brute-force balls"},
      {"eval-maximal", "maximal function of one input"},
      {"growth-table", "R(n) against the closed-form floor L(n)"},
      {"strong11-check", "L1 ratio of the centered operator"},
      {"rwt-search", "largest restricted weak-type ratio over subsets"},
      {"dirac-rwt", "restricted weak-type ratio of branch Diracs"},
      {"glue-check", "glued operator against the part operators"},
  };
  for (const auto& [name, about] : commands) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->add_option("--p0", f.p0, "p0 > 1 of the preset");
    sub->add_option("--nmax", f.nmax, "highest level N")->check(CLI::PositiveNumber);
    sub->add_option("--gen", f.gen)->check(CLI::IsMember({"first", "second", "glued"}));
    sub->add_option("--mode", f.mode, "explicit|quotient, or exhaustive|random for rwt-search");
    sub->add_option("--space-mode", f.space_mode, "explicit|quotient for rwt-search");
    sub->add_option("--op", f.op)->check(CLI::IsMember({"centered", "noncentered"}));
    sub->add_option("--p", f.p, "exponent, defaults to p0");
    sub->add_option("--precision-bits", f.precision_bits)->check(CLI::Range(16L, 1L << 20));
    sub->add_option("--seed", f.seed);
    sub->add_option("--trials", f.trials);
    sub->add_option("--budget", f.budget);
    sub->add_option("--out", f.out, "output file, stdout by default");
    sub->add_option("--format", f.format)->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", f.threads)->check(CLI::PositiveNumber);
    sub->add_option("--params", f.params_file, "JSON parameter tables instead of a preset");
    sub->add_option("--function", f.function, "eval-maximal: constant|extremal[:n]|dirac:INDEX|random:TRIAL");
    sub->add_option("--golden", f.golden, "golden file name for rwt-search");
    sub->add_flag("--dump-points", f.dump_points, "gen-info: list every point");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  const long saved_precision = default_precision();
  const unsigned saved_threads = thread_count();
  set_default_precision(f.precision_bits);
  set_thread_count(f.threads);
  int code = kExitUsage;
  try {
    if (!(f.p0 > 1.0)) throw UsageError("--p0 must be greater than 1");
    if (f.p && !(*f.p >= 1.0)) throw UsageError("--p must be at least 1");
    const Report report = dispatch(command, f);
    std::ostringstream buf;
    if (f.format == "csv") {
      write_csv(buf, report);
    } else {
      write_json(buf, report);
    }
    if (f.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream file(f.out, std::ios::binary);
      if (!file) throw UsageError("cannot write " + f.out);
      file << buf.str();
    }
    code = report.passes() ? kExitPass : kExitFail;
    if (code == kExitFail) err << command << ": asserted bound failed\n";
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const GeneratorError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
  }
  set_default_precision(saved_precision);
  set_thread_count(saved_threads);
  return code;
}

}  // namespace maxtype::cli
