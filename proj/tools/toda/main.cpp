// toda: build, verify, quantize, sample and nondegeneracy front end.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "toda/io/params_io.hpp"
#include "toda/io/reports.hpp"
#include "toda/solution.hpp"

namespace {

using namespace toda;
using io::json;

enum Exit { kPass = 0, kFail = 1, kInvalid = 2, kBudget = 3 };

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  std::optional<double> tol;
  std::optional<GridSpec> grid;
  std::string format = "human";
  std::string mode = "grid";
};

GridSpec parse_grid(const std::string& text) {
  std::istringstream in(text);
  GridSpec g;
  char c1 = 0, c2 = 0, c3 = 0;
  if (!(in >> g.r0 >> c1 >> g.r1 >> c2 >> g.nr >> c3 >> g.ntheta) || c1 != ',' || c2 != ',' || c3 != ',' ||
      !(in >> std::ws).eof()) {
    throw std::invalid_argument("--grid expects r0,r1,nr,ntheta");
  }
  validate(g);
  return g;
}

/// Invariant expressions are large; they are sampled on at most 4 x 4 points of the grid's range.
std::vector<complex> invariant_points(const GridSpec& g) {
  return make_grid({g.r0, g.r1, std::min<std::size_t>(g.nr, 4), std::min<std::size_t>(g.ntheta, 4)});
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + cfg.output);
  out << text;
}

bool structured(const RunConfig& cfg) { return cfg.format == "structured"; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json lambda_status(const io::ParsedDocument& doc) {
  return {{"target", lambda_product_target(doc.params.data)},
          {"deviation", doc.lambda_product_deviation},
          {"ok", doc.lambda_product_ok}};
}

int cmd_build(const RunConfig& cfg) {
  const auto doc = io::read_document(cfg.input, true);
  const TodaSolution sol = build_solution(doc.params);
  json out = io::params_document(sol.params);
  out["summary"] = io::solution_summary(sol.params);
  out["summary"]["lambda_product"] = lambda_status(doc);
  out["summary"]["f_terms"] = sol.f.size();
  if (structured(cfg)) {
    emit(cfg, dump(out));
    return kPass;
  }
  const json& s = out["summary"];
  std::ostringstream t;
  t << "n = " << sol.n() << ", gamma = " << out["gamma"].dump() << "\n";
  t << "dimension N(gamma) = " << s["dimension"].get<std::size_t>() << "\n";
  t << "lambda = " << out["lambda"].dump() << "\n";
  t << "lambda product target = " << io::format_double(s["lambda_product_target"].get<double>()) << " (ok)\n";
  t << "admissible c support:";
  for (const auto& k : s["admissible_support"]) t << " c_" << k["i"].get<int>() << k["j"].get<int>();
  if (s["admissible_support"].empty()) t << " none";
  t << "\nmu = " << s["mu"].dump() << "\nalpha = " << s["alpha"].dump() << "\nbeta = " << s["beta"].dump()
    << "\nindicial w = " << s["indicial_w"].dump() << "\nmass / 4 pi = " << s["mass_over_4pi"].dump() << "\n";
  emit(cfg, t.str());
  return kPass;
}

int cmd_verify(const RunConfig& cfg) {
  const auto doc = io::read_document(cfg.input, false);
  const TodaSolution sol = build_solution(doc.params);
  const GridSpec grid = cfg.grid.value_or(GridSpec{});
  ResidualTolerances rtol;
  if (cfg.tol) rtol.pde = *cfg.tol;
  const auto residual = residual_report(sol, grid, rtol);
  const auto det = determinant_report(sol, make_grid(grid));

  json out;
  out["params"] = io::params_document(sol.params);
  out["lambda_product"] = lambda_status(doc);
  out["residual"] = io::to_json(residual);
  out["determinant"] = io::to_json(det);
  std::string text = io::to_text(residual) + io::to_text(det);

  int code = kPass;
  try {
    const auto inv = invariant_report(sol, invariant_points(grid));
    out["invariants"] = io::to_json(inv);
    text += io::to_text(inv);
    out["pass"] = residual.pass && det.pass && inv.pass;
    code = out["pass"].get<bool>() ? kPass : kFail;
  } catch (const BudgetExceeded& e) {
    out["invariants"] = {{"budget_exceeded", e.what()}};
    text += std::string("invariants: BUDGET EXCEEDED (") + e.what() + ")\n";
    out["pass"] = false;
    code = kBudget;
  }
  if (!doc.lambda_product_ok) {
    text = "lambda product off target: deviation " + io::format_double(doc.lambda_product_deviation) + "\n" + text;
  }
  text += std::string("verify: ") + (code == kPass ? "PASS" : code == kFail ? "FAIL" : "BUDGET") + "\n";
  emit(cfg, structured(cfg) ? dump(out) : text);
  return code;
}

int cmd_quantize(const RunConfig& cfg) {
  const auto doc = io::read_document(cfg.input, true);
  const TodaSolution sol = build_solution(doc.params);
  const auto rep = quantization_report(sol, cfg.tol.value_or(1e-8));
  emit(cfg, structured(cfg) ? dump(io::to_json(rep)) : io::to_text(rep));
  if (!rep.converged) {
    std::cerr << "toda: quadrature did not reach tol " << rep.tol << "\n";
    return kBudget;
  }
  return rep.pass ? kPass : kFail;
}

int cmd_sample(const RunConfig& cfg) {
  const auto doc = io::read_document(cfg.input, true);
  const TodaSolution sol = build_solution(doc.params);
  const GridSpec grid = cfg.grid.value_or(GridSpec{});
  if (cfg.mode == "ray") {
    std::vector<complex> points;
    for (double r : log_radii(grid.r0, grid.r1, grid.nr)) points.emplace_back(r, 0.0);
    emit(cfg, io::sample_csv(sol, points));
    return kPass;
  }
  if (cfg.mode == "oracle") {
    const Su3Oracle oracle(su3_from_params(sol.params));
    const auto s = io::oracle_csv(sol, oracle, make_grid(grid));
    emit(cfg, s.csv);
    const double tol = cfg.tol.value_or(1e-10);
    if (s.max_rel_diff > tol) {
      std::cerr << "toda: oracle deviation " << s.max_rel_diff << " exceeds " << tol << "\n";
      return kFail;
    }
    return kPass;
  }
  emit(cfg, io::sample_csv(sol, make_grid(grid)));
  return kPass;
}

int cmd_nondegeneracy(const RunConfig& cfg) {
  const auto doc = io::read_document(cfg.input, true);
  DimensionOptions opt;
  if (cfg.tol) opt.cutoff = *cfg.tol;
  if (cfg.grid) opt.grid = *cfg.grid;
  const auto rep = dimension_check(doc.params, opt);
  emit(cfg, structured(cfg) ? dump(io::to_json(rep)) : io::to_text(rep));
  return rep.pass ? kPass : kFail;
}

int dispatch(const RunConfig& cfg) {
  if (cfg.command == "build") return cmd_build(cfg);
  if (cfg.command == "verify") return cmd_verify(cfg);
  if (cfg.command == "quantize") return cmd_quantize(cfg);
  if (cfg.command == "sample") return cmd_sample(cfg);
  return cmd_nondegeneracy(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit solutions of the singular SU(n+1) Toda system"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string grid_text;
  double tol = 0.0;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"build", "validate parameters and print the solution summary"},
      {"verify", "PDE residuals, determinant identities, invariants, origin and far-field checks"},
      {"quantize", "total masses against their quantized values"},
      {"sample", "CSV of u_i and e^{u_i} on a grid"},
      {"nondegeneracy", "rank of sampled tangents against the manifold dimension"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input", cfg.input, "parameter document (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--output", cfg.output, "output file (stdout if absent)");
    sub->add_option("--tol", tol, "residual tol (verify), quadrature tol (quantize), rank cutoff (nondegeneracy), "
                                  "oracle tol (sample)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--grid", grid_text, "r0,r1,nr,ntheta");
    sub->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"human", "structured"}));
    if (name == "sample") sub->add_option("--mode", cfg.mode, "sample mode")->check(CLI::IsMember({"grid", "ray", "oracle"}));
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--tol") > 0) cfg.tol = tol;
  }

  try {
    if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);
    return dispatch(cfg);
  } catch (const io::DocumentError& e) {
    std::cerr << "toda: invalid input: violated invariant \"" << e.invariant() << "\" at " << e.detail() << "\n";
    return kInvalid;
  } catch (const InvalidInput& e) {
    std::cerr << "toda: invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "toda: invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const BudgetExceeded& e) {
    std::cerr << "toda: numerical budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::bad_alloc&) {
    std::cerr << "toda: numerical budget exceeded: out of memory\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "toda: " << e.what() << "\n";
    return kFail;
  }
}
