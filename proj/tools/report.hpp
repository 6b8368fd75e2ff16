#pragma once

// Report builders behind the qising command line tool.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qising::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  int n = 0;
  double h = 0;
  std::vector<double> betas;
  std::uint64_t seed = 1;
  std::uint64_t replicas = 1000;
  std::string precision = "auto";
  bool allow_degenerate_h = false;
  std::string out;
  std::string format = "json";
  double field_tol = -1;  // negative: the default 1e-9 / 2^n
  std::uint64_t max_events = 1000000000;
  bool first_hit = false;

  Json to_json() const;
};

/// Validates the field and the command-specific preconditions.
void validate(const RunConfig& cfg);

Json analyze(const RunConfig& cfg);
/// Sets `passed` to false when a ground-truth check fails.
Json verify(const RunConfig& cfg, bool& passed);
Json solve(const RunConfig& cfg);
Json simulate(const RunConfig& cfg);

/// Rows of solve/simulate output as CSV.
std::string to_csv(const Json& result);

}  // namespace qising::cli
