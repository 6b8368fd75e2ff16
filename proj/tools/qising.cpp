// qising: barrier, critical-set and crossover-time reports for Glauber
// dynamics of the Ising model on the hypercube.
//
// Exit codes: 0 success, 1 failed verification or internal error,
// 2 invalid parameters, 3 capability, 4 precision, 5 event budget.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qising/errors.hpp"
#include "report.hpp"

#ifndef QISING_VERSION
#define QISING_VERSION "dev"
#endif

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void add_common(CLI::App* cmd, qising::cli::RunConfig& cfg) {
  cmd->add_option("--n", cfg.n, "hypercube dimension")->required();
  cmd->add_option("--h", cfg.h, "external field, 0 < h < n")->required();
  cmd->add_flag("--allow-degenerate-h", cfg.allow_degenerate_h, "accept fields with b·h close to an integer");
  cmd->add_option("--tol", cfg.field_tol, "field admissibility tolerance (default 1e-9/2^n)");
  cmd->add_option("--out", cfg.out, "write the report to this path");
}

void add_dynamics(CLI::App* cmd, qising::cli::RunConfig& cfg) {
  cmd->add_option("--beta", cfg.betas, "inverse temperature")->expected(1);
  cmd->add_option("--beta-list", cfg.betas, "comma separated inverse temperatures")->delimiter(',');
  cmd->add_option("--precision", cfg.precision, "auto, double or extended")
      ->check(CLI::IsMember({"auto", "double", "extended"}));
  cmd->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

int run(qising::cli::RunConfig& cfg) {
  using namespace qising;
  cli::validate(cfg);
  cli::Json result;
  bool passed = true;
  if (cfg.command == "analyze") result = cli::analyze(cfg);
  if (cfg.command == "verify") result = cli::verify(cfg, passed);
  if (cfg.command == "solve") result = cli::solve(cfg);
  if (cfg.command == "simulate") result = cli::simulate(cfg);

  std::string text;
  if (cfg.format == "csv") {
    text = cli::to_csv(result);
  } else {
    cli::Json doc;
    doc["version"] = QISING_VERSION;
    doc["timestamp"] = utc_now();
    doc["config"] = cfg.to_json();
    doc["result"] = result;
    text = doc.dump(2) + "\n";
  }
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ParameterError("cannot open " + cfg.out);
    f << text;
  }
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metastability reports for Glauber dynamics of the Ising model on Q_n"};
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", QISING_VERSION);
  app.require_subcommand(1);
  qising::cli::RunConfig cfg;

  auto* analyze = app.add_subcommand("analyze", "barrier and critical-set report");
  add_common(analyze, cfg);
  auto* verify = app.add_subcommand("verify", "ground-truth verification suite (n <= 4)");
  add_common(verify, cfg);
  auto* solve = app.add_subcommand("solve", "exact expected crossover times (n <= 4)");
  add_common(solve, cfg);
  add_dynamics(solve, cfg);
  auto* simulate = app.add_subcommand("simulate", "kinetic Monte Carlo crossover times");
  add_common(simulate, cfg);
  add_dynamics(simulate, cfg);
  simulate->add_option("--seed", cfg.seed, "master seed");
  simulate->add_option("--replicas", cfg.replicas, "independent trajectories");
  simulate->add_option("--max-events", cfg.max_events, "per-trajectory event cap");
  simulate->add_flag("--first-hit", cfg.first_hit, "also tally the first critical configuration entered");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    return run(cfg);
  } catch (const qising::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qising::CapabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qising::PrecisionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const qising::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
