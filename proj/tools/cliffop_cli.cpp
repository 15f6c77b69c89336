// cliffop: run verification suites and refinement ladders, write report.json / CSV.
//
//   cliffop verify <suite> [--n N] [--nodes N] [--hopf a,b,c] [--symbol S] [--k K]
//                          [--tol T] [--seed S] [--rule linear|constant] [--out DIR] [--config FILE]
//   cliffop convergence <suite> --ladder 64,128,256 [...]
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "suites.hpp"

using namespace cliffop;
using namespace cliffop::cli;

namespace {

json report_json(const RunConfig& c, const Report& r) {
  json checks = json::array();
  for (const auto& ch : r.checks)
    checks.push_back({{"name", ch.name}, {"metric", ch.metric}, {"tol", ch.tol}, {"pass", ch.pass}});
  const cd kappa = r.kappa.value_or(calibrate_kappa(build_dirac(1)));
  return {{"suite", c.suite}, {"config", c.to_json()}, {"checks", checks},
          {"kappa", complex_json(kappa)}, {"pass", r.passed()}, {"version", kVersion}};
}

std::string csv_text(const Table& t, double floor) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  for (std::size_t col = 1; col < t.columns.size(); ++col)
    os << "# " << t.columns[col] << " decreasing=" << (decreasing(t, col, floor) ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac-operator boundary integral verification"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value file mirroring the flags; flags override it");

  RunConfig cfg;
  std::vector<int> hopf{16, 16, 16};
  std::string suite;
  double tol = 0.0;
  auto* tol_opt = app.add_option("--tol", tol, "tolerance of the suite's primary check")->check(CLI::PositiveNumber);
  app.add_option("--n", cfg.n, "complex dimension")->check(CLI::Range(1, 8));
  app.add_option("--nodes", cfg.nodes, "circle node count")->check(CLI::Range(4, 1 << 14));
  app.add_option("--hopf", hopf, "Hopf grid eta,t1,t2")->delimiter(',')->expected(3)->check(CLI::Range(4, 256));
  app.add_option("--symbol", cfg.symbol, "multiplier family");
  app.add_option("--k", cfg.k, "multiplier parameter k");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--rule", cfg.rule, "singularity subtraction")->check(CLI::IsMember({"linear", "constant"}));
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--ladder", cfg.ladder, "refinement sizes, comma separated")->delimiter(',')->check(CLI::Range(4, 1 << 14));
  app.add_option("--floor", cfg.floor, "round-off floor for decrease checks")->check(CLI::PositiveNumber);

  const std::vector<std::string> suites = {"clifford", "green", "cauchy", "symbol", "toeplitz-index", "octonion"};
  auto* verify = app.add_subcommand("verify", "run a verification suite and write report.json");
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suites));
  auto* conv = app.add_subcommand("convergence", "run a refinement ladder and write <suite>_convergence.csv");
  conv->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember({"cauchy", "green"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.suite = suite;
    if (tol_opt->count()) cfg.tol = tol;
    cfg.hopf = {hopf[0], hopf[1], hopf[2]};
    std::filesystem::create_directories(cfg.out);
    const std::filesystem::path out(cfg.out);

    if (*verify) {
      const Report r = run_suite(cfg);
      write_atomic(out / "report.json", report_json(cfg, r).dump(2) + "\n");
      for (const auto& ch : r.checks)
        std::printf("%-36s %-4s metric %.3e tol %.1e\n", ch.name.c_str(), ch.pass ? "ok" : "FAIL", ch.metric, ch.tol);
      return r.passed() ? 0 : 1;
    }
    const Table t = convergence(cfg);
    const std::string text = csv_text(t, cfg.floor);
    write_atomic(out / (cfg.suite + "_convergence.csv"), text);
    std::fputs(text.c_str(), stdout);
    bool ok = true;
    for (const auto& name : t.asserted) {
      const auto col = std::size_t(std::find(t.columns.begin(), t.columns.end(), name) - t.columns.begin());
      ok = ok && decreasing(t, col, cfg.floor);
    }
    return ok ? 0 : 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", e.kind().c_str(), e.what());
    return e.kind() == "invalid-argument" || e.kind() == "precondition" || e.kind() == "domain" ? 2 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
