#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zvar/geometry.hpp"
#include "zvar/rng.hpp"

namespace zvar {

enum class CountingMethod { Enumerate, Contour, Auto };

/// One Monte Carlo counting experiment: k = m simultaneous-zero counts in
/// a fixed domain over seeded trials.
struct ExperimentConfig {
  int m = 1;
  int k = 1;
  std::vector<int> degrees;  // one or more N values
  Domain domain = Domain::disk(Cx(0.0), 1.0);
  long trials = 1000;
  std::uint64_t master_seed = 0;
  CountingMethod method = CountingMethod::Auto;
  int workers = 1;
  std::string out_prefix;  // empty: no files written
  bool with_exact_variance = true;  // m = 1: attach variance_boundary_exact
};

/// Per-degree record of an experiment.
struct DegreeRecord {
  int N = 0;
  long trials = 0;
  double mean_count = 0.0;
  double se_mean = 0.0;
  double var_count = 0.0;
  double se_var = 0.0;  // from the fourth central moment
  long rejected_trials = 0;
  double expected_count_exact = 0.0;
  double predicted_variance = 0.0;
  double exact_variance = 0.0;  // NaN when unavailable (m >= 2)
  double wall_seconds = 0.0;    // reported in metadata only, never in the CSV
};

struct ExperimentSummary {
  ExperimentConfig config;
  std::vector<DegreeRecord> records;

  /// Deterministic CSV (byte-identical across reruns and worker counts).
  std::string to_csv() const;
  /// Run metadata: config echo, build id, seed, rejection counts, timing.
  std::string metadata_json() const;
};

double expected_count(int m, int N, const Domain& U);

ExperimentSummary run_counting_experiment(const ExperimentConfig& cfg);

/// Per-N rows plus the fitted log-log slope of variance vs N, the ratio
/// against the predicted asymptotics, and the self-averaging column
/// se_mean / mean.
struct ScalingStudy {
  ExperimentSummary summary;
  double fitted_slope = 0.0;      // d log Var / d log N
  std::vector<double> ratio;      // Var / (N^{2k-m-1/2} nu_mk Vol(dU))
  std::vector<double> fluct;      // se_mean / mean_count
  std::string to_csv() const;
};

ScalingStudy scaling_study(const ExperimentConfig& cfg);

struct McEstimate {
  double estimate = 0.0;
  double se = 0.0;
};

/// Monte Carlo estimate of E(log|Y1| log|Y2|) for unit complex Gaussians
/// with |E(Y1 conj(Y2))| = t, via Y1 = Xi1, Y2 = t Xi1 + sqrt(1-t^2) Xi2.
McEstimate mc_bipotential_check(double t, long trials, SeedSpec seed);

/// Parse a domain from config keys kind/params (see README for shapes).
Domain domain_from_config(const std::string& kind, const std::vector<double>& params);

/// Minimal TOML subset reader: [section] headers, dotted keys,
/// key = value with integers, floats, strings and flat arrays.
class TomlLite {
 public:
  static TomlLite parse_file(const std::string& path);
  static TomlLite parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  long long get_int(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::vector<double> get_double_array(const std::string& key) const;
  std::vector<long long> get_int_array(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;  // fully-qualified key -> raw token
};

/// Build an ExperimentConfig from a TOML config (keys: m, degree|degrees,
/// k, domain.kind, domain.params, trials, seed, method, workers,
/// out_prefix).
ExperimentConfig config_from_toml(const TomlLite& toml);

}  // namespace zvar
