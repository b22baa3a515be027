// wedgebell: Bell-CHSH correlators of a free massive scalar field.
//
// Exit codes: 0 success, 2 invalid configuration, 3 unconverged quadrature
// under --strict, 64 usage error.

#include <omp.h>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "wedgebell/bounded.hpp"
#include "wedgebell/kernels.hpp"
#include "wedgebell/modular.hpp"
#include "wedgebell/quadrature.hpp"
#include "wedgebell/run_config.hpp"
#include "wedgebell/search.hpp"
#include "wedgebell/squeezed.hpp"
#include "wedgebell/test_functions.hpp"

namespace {

using nlohmann::json;
using namespace wedgebell;

constexpr int kExitInvalid = 2;
constexpr int kExitUnconverged = 3;
constexpr int kExitUsage = 64;

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool seed_given = false;
  int workers = 0;
  std::string output;
  std::string format;  // empty: subcommand default
  std::string convention = "paper";
  bool strict = false;
};

/// Thrown by handlers after they have collected every violated invariant.
struct InvalidConfig {
  Violations violations;
};

class Emitter {
public:
  explicit Emitter(const GlobalOptions& g) : g_(g) {}

  std::string format(const std::string& fallback) const {
    return g_.format.empty() ? fallback : g_.format;
  }

  void write(const std::string& text) const {
    if (g_.output.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(g_.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + g_.output);
    out << text;
  }

  void json_doc(const json& doc) const { write(doc.dump(2) + "\n"); }

  // Rows of doubles, written as CSV (17 significant digits) or a JSON record.
  void table(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
             const json& config, const std::string& fallback) const {
    if (format(fallback) == "json") {
      json doc{{"config", config}, {"columns", columns}, {"rows", rows}};
      json_doc(doc);
      return;
    }
    std::string text;
    for (std::size_t i = 0; i < columns.size(); ++i) text += (i ? "," : "") + columns[i];
    text += "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) text += fmt::format("{}{:.17g}", i ? "," : "", row[i]);
      text += "\n";
    }
    write(text);
  }

private:
  const GlobalOptions& g_;
};

json read_json_file(const std::string& path, Violations& v) {
  std::ifstream in(path);
  if (!in) {
    v.add("cannot read config file '" + path + "'");
    return json::object();
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    v.add("config file '" + path + "' is not valid JSON: " + e.what());
    return json::object();
  }
}

KernelConvention convention_or_flag(const GlobalOptions& g, Violations& v) {
  try {
    return parse_convention(g.convention);
  } catch (const std::invalid_argument& e) {
    v.add(e.what());
    return KernelConvention::Paper;
  }
}

GridRange grid_or_violation(const std::string& text, const std::string& flag, Violations& v) {
  try {
    return parse_grid_range(text);
  } catch (const std::invalid_argument& e) {
    v.add(flag + ": " + e.what());
    return {};
  }
}

void throw_if_invalid(Violations& v) {
  if (!v.empty()) throw InvalidConfig{std::move(v)};
}

// --------------------------------------------------------------------------

struct KernelsEvalArgs {
  double t = 0.0, x = 0.0, mass = 1.0;
};

int run_kernels_eval(const KernelsEvalArgs& a, const GlobalOptions& g) {
  Violations v;
  v.require(a.mass > 0.0, "mass must be > 0");
  const KernelConvention conv = convention_or_flag(g, v);
  throw_if_invalid(v);

  const Mass m(a.mass);
  const Event1p1 e{a.t, a.x};
  json doc{{"config", {{"t", a.t}, {"x", a.x}, {"mass", a.mass}, {"convention", to_string(conv)}}},
           {"interval", interval(e)},
           {"pauli_jordan", pauli_jordan(e, m)}};
  const auto h = hadamard(e, m, conv);
  doc["on_cone"] = !h.has_value();
  doc["hadamard"] = h ? json(*h) : json(nullptr);
  if (const auto w = wightman(e, m, conv)) {
    doc["wightman"] = {{"re", w->real()}, {"im", w->imag()}};
  } else {
    doc["wightman"] = nullptr;
  }
  Emitter(g).json_doc(doc);
  return 0;
}

struct TestfnSampleArgs {
  std::string side = "right";
  double decay = 1.0, cutoff = 2.5, amplitude = 1.0;
  std::size_t nt = 51, nx = 51;
};

int run_testfn_sample(const TestfnSampleArgs& a, const GlobalOptions& g) {
  Violations v;
  v.require(a.side == "right" || a.side == "left", "side must be right|left");
  v.require(a.decay > 0.0, "decay must be > 0");
  v.require(a.cutoff > 0.0, "cutoff must be > 0");
  v.require(a.nt >= 2 && a.nx >= 2, "grid needs at least 2 nodes per axis");
  throw_if_invalid(v);

  const WedgeBumpParams p{a.side == "right" ? WedgeSide::Right : WedgeSide::Left, a.decay, a.cutoff,
                          a.amplitude};
  const Rectangle box = bounding_box(p);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < a.nt; ++i) {
    const double t = box.t_min + (box.t_max - box.t_min) * static_cast<double>(i) / (a.nt - 1);
    for (std::size_t j = 0; j < a.nx; ++j) {
      const double x = box.x_min + (box.x_max - box.x_min) * static_cast<double>(j) / (a.nx - 1);
      rows.push_back({t, x, evaluate(p, {t, x})});
    }
  }
  Emitter(g).table({"t", "x", "value"}, rows, to_json(p), "csv");
  return 0;
}

struct ModularScanArgs {
  std::string eta = "0:2:21", etap = "0:2:21", lambda = "0:1:11";
};

int run_modular_scan(const ModularScanArgs& a, const GlobalOptions& g) {
  Violations v;
  const GridRange ge = grid_or_violation(a.eta, "--eta-range", v);
  const GridRange gp = grid_or_violation(a.etap, "--etap-range", v);
  const GridRange gl = grid_or_violation(a.lambda, "--lambda-range", v);
  if (v.empty()) {
    v.require(ge.lo >= 0.0, "--eta-range: eta must be >= 0");
    v.require(gp.lo >= 0.0, "--etap-range: eta_prime must be >= 0");
    v.require(gl.lo >= 0.0 && gl.hi <= 1.0 && gl.at(gl.n - 1) <= 1.0, "--lambda-range: lambda must lie in [0, 1]");
  }
  throw_if_invalid(v);

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < ge.n; ++i) {
    for (std::size_t j = 0; j < gp.n; ++j) {
      for (std::size_t k = 0; k < gl.n; ++k) {
        const SpectralParams p{ge.at(i), gp.at(j), gl.at(k)};
        rows.push_back({p.eta, p.eta_prime, p.lambda, weyl_chsh_closed_form(p)});
      }
    }
  }
  Emitter(g).table({"eta", "eta_prime", "lambda", "chsh"}, rows,
                   {{"eta_range", a.eta}, {"etap_range", a.etap}, {"lambda_range", a.lambda}}, "csv");
  return 0;
}

int finish_weyl(const WeylChshResult& r, json doc, const GlobalOptions& g) {
  Emitter(g).json_doc(doc);
  return g.strict && !r.chsh.converged ? kExitUnconverged : 0;
}

int run_weyl_numeric(const std::string& config_path, const GlobalOptions& g) {
  Violations v;
  const json j = read_json_file(config_path, v);
  WeylRunConfig defaults;
  defaults.convention = convention_or_flag(g, v);
  defaults.quad.seed = g.seed;
  if (v.empty()) {
    v.require(j.contains("mass"), "mass is missing");
    v.require(j.contains("test_functions"), "test_functions is missing");
  }
  WeylRunConfig cfg = parse_weyl_config(j, defaults, v);
  if (g.seed_given) cfg.quad.seed = g.seed;
  throw_if_invalid(v);

  const WeylChshResult r = chsh_weyl_numeric(cfg.test_functions, Mass(cfg.mass), cfg.convention, cfg.quad);
  json doc = to_json(r);
  doc["seed"] = cfg.quad.seed;
  doc["config"] = to_json(cfg);
  return finish_weyl(r, doc, g);
}

struct BoundedSurfaceArgs {
  double lambda = 0.8;
  std::string eta = "0.04:2:50", etap = "0.04:2:50";
  double rel_tol = 1e-8;
};

int run_bounded_surface(const BoundedSurfaceArgs& a, const GlobalOptions& g) {
  Violations v;
  v.require(a.lambda >= 0.0 && a.lambda <= 1.0, "lambda must lie in [0, 1]");
  v.require(a.rel_tol > 0.0 && a.rel_tol < 1.0, "rel-tol must lie in (0, 1)");
  const GridRange ge = grid_or_violation(a.eta, "--eta-range", v);
  const GridRange gp = grid_or_violation(a.etap, "--etap-range", v);
  if (v.empty()) {
    v.require(ge.lo >= 0.0, "--eta-range: eta must be >= 0");
    v.require(gp.lo >= 0.0, "--etap-range: eta_prime must be >= 0");
  }
  throw_if_invalid(v);

  const auto grid = surface_grid(a.lambda, ge, gp, {a.rel_tol, 15});
  std::vector<std::vector<double>> rows;
  rows.reserve(grid.size());
  for (const auto& r : grid) rows.push_back({r.eta, r.eta_prime, r.chsh});
  Emitter(g).table({"eta", "eta_prime", "chsh"}, rows,
                   {{"lambda", a.lambda}, {"eta_range", a.eta}, {"etap_range", a.etap}, {"rel_tol", a.rel_tol}},
                   "csv");
  return 0;
}

struct SqueezedArgs {
  double lambda = 0.5;
  std::size_t pairs = 32;
  std::vector<double> angles;
};

int run_squeezed(const SqueezedArgs& a, const GlobalOptions& g) {
  Violations v;
  v.require(a.lambda >= 0.0 && a.lambda < 1.0, "lambda must lie in [0, 1) for a truncated state");
  v.require(a.pairs >= 1, "pairs must be >= 1");
  v.require(a.angles.empty() || a.angles.size() == 4, "angles must be four comma-separated values");
  throw_if_invalid(v);

  FockConfig cfg{a.pairs, a.lambda, maximal_bell_angles()};
  if (a.angles.size() == 4) cfg.angles = {a.angles[0], a.angles[1], a.angles[2], a.angles[3]};
  const double truncated = chsh_squeezed(cfg);
  const double analytic = chsh_analytic(cfg.lambda, cfg.angles);
  Emitter(g).json_doc({{"config",
                        {{"lambda", cfg.lambda},
                         {"pairs", cfg.pair_count},
                         {"angles",
                          {cfg.angles.alpha, cfg.angles.alpha_prime, cfg.angles.beta,
                           cfg.angles.beta_prime}}}},
                       {"truncated", truncated},
                       {"analytic", analytic},
                       {"difference", truncated - analytic},
                       {"norm_deficit", state_coefficients(cfg).norm_deficit}});
  return 0;
}

struct SearchArgs {
  std::string objective = "modular";
  std::size_t samples = 100000;
  std::size_t keep_top = 10;
  bool refine = false;
  std::size_t refine_iters = 100;
  std::string config_path;
};

int run_search(const SearchArgs& a, const GlobalOptions& g) {
  Violations v;
  Objective obj;
  try {
    obj.kind = parse_objective_kind(a.objective);
  } catch (const std::invalid_argument& e) {
    v.add(e.what());
  }
  obj.convention = convention_or_flag(g, v);
  json j = json::object();
  if (!a.config_path.empty()) j = read_json_file(a.config_path, v);
  obj.quad = parse_quad_config(j, obj.quad, v);
  if (j.contains("rescore_quad")) {
    obj.rescore_quad = parse_quad_config(json{{"quad", j.at("rescore_quad")}}, obj.rescore_quad, v);
  }
  const SearchSpace space = parse_search_space(j, default_search_space(obj.kind), v);
  SearchConfig cfg{a.samples, g.seed, a.keep_top, a.refine, a.refine_iters};
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    v.add(e.what());
  }
  throw_if_invalid(v);

  const SearchResult result = random_search(obj, space, cfg);
  const auto names = obj.parameter_names();
  json top = json::array();
  for (const auto& hit : result.top) {
    json params = json::object();
    for (std::size_t d = 0; d < names.size(); ++d) params[names[d]] = hit.params[d];
    top.push_back({{"value", hit.value}, {"sample_index", hit.sample_index}, {"params", params}});
  }
  json space_doc = json::array();
  for (const auto& b : space.bounds) {
    space_doc.push_back({{"name", b.name}, {"lo", b.lo}, {"hi", b.hi}, {"log_scale", b.log_scale}});
  }
  json config{{"objective", to_string(obj.kind)},
              {"samples", cfg.samples},
              {"seed", cfg.seed},
              {"keep_top", cfg.keep_top},
              {"refine", cfg.refine},
              {"refine_iters", cfg.refine_iters},
              {"space", space_doc}};
  if (obj.kind == ObjectiveKind::WeylNumeric) {
    config["convention"] = to_string(obj.convention);
    config["quad"] = to_json(obj.quad);
    config["rescore_quad"] = to_json(obj.rescore_quad);
  }
  Emitter(g).json_doc({{"config", config},
                       {"evaluated", result.evaluated},
                       {"failed", result.failed},
                       {"top", top}});
  return 0;
}

int run_reproduce_table(int row, const std::string& config_path, const GlobalOptions& g) {
  Violations v;
  v.require(row >= 1 && row <= kTableRows, "row must lie in 1.." + std::to_string(kTableRows));
  KernelConvention conv = convention_or_flag(g, v);
  QuadConfig quad;
  quad.seed = g.seed;
  json j = json::object();
  if (!config_path.empty()) j = read_json_file(config_path, v);
  quad = parse_quad_config(j, quad, v);
  if (j.contains("convention")) {
    try {
      conv = parse_convention(j.at("convention").get<std::string>());
    } catch (const std::exception& e) {
      v.add(std::string("convention: ") + e.what());
    }
  }
  if (g.seed_given) quad.seed = g.seed;
  throw_if_invalid(v);

  const TableRow tr = table_row(row);
  const WeylChshResult r = reproduce_table(row, conv, quad);
  WeylRunConfig resolved{tr.test_functions, tr.mass, conv, quad};
  json doc = to_json(r);
  doc["row"] = row;
  doc["reported"] = tr.reported_chsh;
  doc["deviation"] = r.chsh.value - tr.reported_chsh;
  doc["seed"] = quad.seed;
  doc["config"] = to_json(resolved);
  return finish_weyl(r, doc, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-CHSH correlators of a free massive scalar field in 1+1 dimensions"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for every randomised step");
  app.add_option("--workers", g.workers, "Maximum parallel workers (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--output", g.output, "Write results to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--convention", g.convention, "Hadamard normalisation")
      ->check(CLI::IsMember({"paper", "standard"}));
  app.add_flag("--strict", g.strict, "Exit with status 3 when quadrature did not converge");

  auto* kernels = app.add_subcommand("kernels", "Two-point kernels");
  kernels->require_subcommand(1);
  KernelsEvalArgs ke;
  auto* kernels_eval = kernels->add_subcommand("eval", "Evaluate kernels at one separation");
  kernels_eval->add_option("--t", ke.t)->required();
  kernels_eval->add_option("--x", ke.x)->required();
  kernels_eval->add_option("--mass", ke.mass)->required();

  auto* testfn = app.add_subcommand("testfn", "Wedge test functions");
  testfn->require_subcommand(1);
  TestfnSampleArgs ts;
  auto* testfn_sample = testfn->add_subcommand("sample", "Sample a bump on its bounding box");
  testfn_sample->add_option("--side", ts.side)->check(CLI::IsMember({"right", "left"}));
  testfn_sample->add_option("--decay", ts.decay);
  testfn_sample->add_option("--cutoff", ts.cutoff);
  testfn_sample->add_option("--amplitude", ts.amplitude);
  testfn_sample->add_option("--nt", ts.nt);
  testfn_sample->add_option("--nx", ts.nx);

  auto* modular = app.add_subcommand("modular", "Closed-form modular correlators");
  modular->require_subcommand(1);
  ModularScanArgs ms;
  auto* modular_scan = modular->add_subcommand("scan", "Grid scan of the closed-form Weyl CHSH");
  modular_scan->add_option("--eta-range", ms.eta, "lo:hi:n");
  modular_scan->add_option("--etap-range", ms.etap, "lo:hi:n");
  modular_scan->add_option("--lambda-range", ms.lambda, "lo:hi:n");

  std::string weyl_config;
  auto* weyl = app.add_subcommand("weyl-numeric", "Numerical Weyl CHSH from a JSON config");
  weyl->add_option("--config", weyl_config)->required();

  auto* bounded = app.add_subcommand("bounded", "Bounded-operator correlators");
  bounded->require_subcommand(1);
  BoundedSurfaceArgs bs;
  auto* bounded_surface = bounded->add_subcommand("surface", "CHSH surface over (eta, eta')");
  bounded_surface->add_option("--lambda", bs.lambda);
  bounded_surface->add_option("--eta-range", bs.eta, "lo:hi:n");
  bounded_surface->add_option("--etap-range", bs.etap, "lo:hi:n");
  bounded_surface->add_option("--rel-tol", bs.rel_tol);

  SqueezedArgs sq;
  auto* squeezed = app.add_subcommand("squeezed", "Truncated two-mode squeezed state");
  squeezed->add_option("--lambda", sq.lambda);
  squeezed->add_option("--pairs", sq.pairs);
  squeezed->add_option("--angles", sq.angles, "alpha,alpha',beta,beta'")->delimiter(',');

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Random search for CHSH violations");
  search->add_option("--objective", sa.objective)->check(CLI::IsMember({"modular", "bounded", "weyl"}));
  search->add_option("--samples", sa.samples);
  search->add_option("--keep-top", sa.keep_top);
  search->add_flag("--refine", sa.refine);
  search->add_option("--refine-iters", sa.refine_iters);
  search->add_option("--config", sa.config_path, "JSON with optional quad, rescore_quad, space");

  int row = 1;
  std::string table_config;
  auto* reproduce = app.add_subcommand("reproduce-table", "Evaluate a row of the parameter table");
  reproduce->add_option("--row", row)->required();
  reproduce->add_option("--config", table_config, "JSON with optional quad and convention");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  g.seed_given = app.count("--seed") > 0;
  if (g.workers > 0) omp_set_num_threads(g.workers);

  try {
    if (*kernels_eval) return run_kernels_eval(ke, g);
    if (*testfn_sample) return run_testfn_sample(ts, g);
    if (*modular_scan) return run_modular_scan(ms, g);
    if (*weyl) return run_weyl_numeric(weyl_config, g);
    if (*bounded_surface) return run_bounded_surface(bs, g);
    if (*squeezed) return run_squeezed(sq, g);
    if (*search) return run_search(sa, g);
    if (*reproduce) return run_reproduce_table(row, table_config, g);
  } catch (const InvalidConfig& e) {
    std::cerr << e.violations.to_json().dump(2) << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << app.help();
  return kExitUsage;
}
