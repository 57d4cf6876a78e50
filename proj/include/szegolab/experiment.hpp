#pragma once

// Config-driven experiment runner behind the `szegolab` command line tool.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "szegolab/serialization.hpp"

namespace szegolab {

enum class ExperimentKind {
  SzegoRatio,
  StrongSzego,
  EigenDist,
  SingularDist,
  MathieuDist,
  CfExpand,
  Folner,
  Stability,
};

std::string to_string(ExperimentKind k);
std::optional<ExperimentKind> experiment_kind_from_string(const std::string& s);
/// Every experiment name with a one-line description.
std::vector<std::pair<std::string, std::string>> list_experiments();

struct DistinguishedRequest {
  FrequencyBase base;
  std::size_t length = 0;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::SzegoRatio;
  std::optional<TrigPolynomial> symbol;
  std::optional<OperatorDescription> op;
  std::optional<TestFunction> g;
  std::vector<long long> sizes;  ///< explicit grid, or the distinguished sequence values
  std::optional<DistinguishedRequest> distinguished;
  std::filesystem::path output;  ///< artifacts go to <output>.csv and <output>.json
  double tolerance = 1e-6;
  std::optional<Index> truncation;  ///< big truncation m
  std::optional<Index> window;      ///< mean window N
  // cf-expand
  double alpha = 0.0;
  int max_terms = 64;
  std::int64_t q_cap = kDefaultQCap;
};

/// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const Json& j);

/// Geometric (factor 2 by default) or arithmetic size grid.
std::vector<long long> size_grid(long long start, long long stop, std::optional<long long> step = std::nullopt,
                                 long long factor = 2);

struct ExperimentResult {
  std::vector<SzegoReport> reports;
  std::optional<ContinuedFraction> cf;
  Json summary;  ///< {experiment, predicted, final_residual, verdict, ...}
};

/// Runs the numerics only; no files are touched.
ExperimentResult execute(const ExperimentConfig& cfg);

/// Writes the report CSV. Throws PreconditionError on an empty list, Error on I/O failure.
void emit_report(const std::vector<SzegoReport>& reports, const std::filesystem::path& path);

enum ExitStatus : int { kExitOk = 0, kExitNumeric = 1, kExitConfig = 2 };

/// Executes and writes <output>.csv and <output>.json. Returns kExitNumeric when the verdict is "fail".
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);

/// Reads, validates and runs a config file: 0 ok, 1 numeric failure, 2 config failure.
int run_config_file(const std::filesystem::path& path, std::ostream& log);

/// Validation only.
int validate_config_file(const std::filesystem::path& path, std::ostream& log);

}  // namespace szegolab
