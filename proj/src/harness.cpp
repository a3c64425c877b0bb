#include "zvar/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "zvar/bipotential.hpp"
#include "zvar/errors.hpp"
#include "zvar/roots.hpp"
#include "zvar/special.hpp"
#include "zvar/variance.hpp"

#ifndef ZVAR_BUILD_ID
#define ZVAR_BUILD_ID "unknown"
#endif

namespace zvar {

double expected_count(int m, int N, const Domain& U) {
  if (U.dim() != m) throw std::invalid_argument("expected_count: domain dimension != m");
  return std::pow(double(N), m) * std::exp(log_factorial(m)) * domain_volume(U) /
         std::pow(M_PI, m);
}

namespace {

constexpr double kMaxRejectFraction = 1e-3;

// Count zeros for one trial; redraws (fresh lanes) on solver rejections.
long run_trial(const ExperimentConfig& cfg, int N, std::uint64_t trial, long* rejections) {
  const SeedSpec seed{cfg.master_seed, trial};
  const int lanes_per_draw = std::max(1, cfg.k);
  for (int redraw = 0;; ++redraw) {
    if (redraw > 64) throw SolverAbortError("run_trial: persistent rejection");
    const std::uint64_t lane_base = std::uint64_t(redraw) * std::uint64_t(lanes_per_draw);
    try {
      if (cfg.m == 1) {
        const RandomPolynomial p = sample(1, N, seed, lane_base);
        const bool enumerate = cfg.method == CountingMethod::Enumerate ||
                               (cfg.method == CountingMethod::Auto && N <= 200);
        if (enumerate) return count_in_domain(all_roots(p), cfg.domain);
        return count_zeros_contour(p, cfg.domain);
      }
      const PolySystem sys = sample_system(cfg.m, N, cfg.k, seed, lane_base);
      return count_in_domain(solve_system_2d(sys.polys[0], sys.polys[1]), cfg.domain);
    } catch (const RootAtInfinityError&) {
      ++*rejections;
    } catch (const NearBoundaryZeroError&) {
      ++*rejections;
    } catch (const DegenerateSystemError&) {
      ++*rejections;
    }
  }
}

DegreeRecord summarize(const ExperimentConfig& cfg, int N, const std::vector<long>& counts,
                       long rejections, double wall_seconds) {
  DegreeRecord rec;
  rec.N = N;
  rec.trials = long(counts.size());
  rec.rejected_trials = rejections;
  rec.wall_seconds = wall_seconds;
  const double n = double(counts.size());
  double mean = 0.0;
  for (long c : counts) mean += double(c);
  mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (long c : counts) {
    const double d = double(c) - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m4 /= n;
  rec.mean_count = mean;
  rec.var_count = m2 * n / (n - 1.0);
  rec.se_mean = std::sqrt(rec.var_count / n);
  rec.se_var = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
  rec.expected_count_exact = expected_count(cfg.m, N, cfg.domain);
  rec.predicted_variance = predicted_variance(cfg.m, cfg.k, N, cfg.domain);
  rec.exact_variance = std::numeric_limits<double>::quiet_NaN();
  if (cfg.m == 1 && cfg.with_exact_variance) rec.exact_variance = variance_boundary_exact(cfg.domain, N);
  return rec;
}

std::string format_double(double v) {
  char buf[40];
  if (std::isnan(v)) return "nan";
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

ExperimentSummary run_counting_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 100) throw std::invalid_argument("run_counting_experiment: trials >= 100");
  if (cfg.k != cfg.m) throw std::invalid_argument("run_counting_experiment: point counting needs k = m");
  if (cfg.m > 2) throw std::invalid_argument("run_counting_experiment: m <= 2 (solver limitation)");
  if (cfg.degrees.empty()) throw std::invalid_argument("run_counting_experiment: at least one degree");
  for (int N : cfg.degrees)
    if (cfg.m == 2 && N > 12) throw std::invalid_argument("run_counting_experiment: m = 2 needs N <= 12");

  ExperimentSummary summary;
  summary.config = cfg;
  for (int N : cfg.degrees) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<long> counts(size_t(cfg.trials), 0);
    std::vector<long> rejections_per_worker(size_t(std::max(1, cfg.workers)), 0);

    const int workers = std::max(1, cfg.workers);
    auto work = [&](int w) {
      long rej = 0;
      for (long t = w; t < cfg.trials; t += workers)
        counts[size_t(t)] = run_trial(cfg, N, std::uint64_t(t), &rej);
      rejections_per_worker[size_t(w)] = rej;
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(size_t(workers));
      for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }
    long rejections = 0;
    for (long r : rejections_per_worker) rejections += r;
    if (double(rejections) > kMaxRejectFraction * double(cfg.trials))
      throw SolverAbortError("run_counting_experiment: rejection rate above 1e-3");
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    summary.records.push_back(summarize(cfg, N, counts, rejections, wall));
  }

  if (!cfg.out_prefix.empty()) {
    std::ofstream csv(cfg.out_prefix + "_summary.csv");
    csv << summary.to_csv();
    std::ofstream meta(cfg.out_prefix + "_meta.json");
    meta << summary.metadata_json();
  }
  return summary;
}

std::string ExperimentSummary::to_csv() const {
  std::ostringstream os;
  os << "N,trials,mean_count,se_mean,var_count,se_var,rejected_trials,"
        "expected_count_exact,predicted_variance,exact_variance\n";
  for (const DegreeRecord& r : records) {
    os << r.N << ',' << r.trials << ',' << format_double(r.mean_count) << ','
       << format_double(r.se_mean) << ',' << format_double(r.var_count) << ','
       << format_double(r.se_var) << ',' << r.rejected_trials << ','
       << format_double(r.expected_count_exact) << ',' << format_double(r.predicted_variance)
       << ',' << format_double(r.exact_variance) << '\n';
  }
  return os.str();
}

std::string ExperimentSummary::metadata_json() const {
  nlohmann::json meta;
  meta["build"] = "zvar-0.1.0";
  meta["build_id"] = ZVAR_BUILD_ID;
  meta["m"] = config.m;
  meta["k"] = config.k;
  meta["domain"] = config.domain.describe();
  meta["trials"] = config.trials;
  meta["master_seed"] = config.master_seed;
  meta["workers"] = config.workers;
  meta["method"] = config.method == CountingMethod::Enumerate ? "enumerate"
                   : config.method == CountingMethod::Contour ? "contour"
                                                              : "auto";
  for (const DegreeRecord& r : records) {
    meta["degrees"].push_back(r.N);
    meta["rejected_trials"].push_back(r.rejected_trials);
    meta["wall_seconds"].push_back(r.wall_seconds);
  }
  return meta.dump(2) + "\n";
}

ScalingStudy scaling_study(const ExperimentConfig& cfg) {
  if (cfg.degrees.size() < 3) throw std::invalid_argument("scaling_study: need >= 3 degrees");
  ScalingStudy st;
  st.summary = run_counting_experiment(cfg);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = int(st.summary.records.size());
  for (const DegreeRecord& r : st.summary.records) {
    const double x = std::log(double(r.N)), y = std::log(r.var_count);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    st.ratio.push_back(r.var_count / r.predicted_variance);
    st.fluct.push_back(r.se_mean / r.mean_count);
  }
  st.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return st;
}

std::string ScalingStudy::to_csv() const {
  std::ostringstream os;
  os << "N,mean_count,var_count,se_var,ratio_to_predicted,se_mean_over_mean,fitted_slope\n";
  for (size_t i = 0; i < summary.records.size(); ++i) {
    const DegreeRecord& r = summary.records[i];
    os << r.N << ',' << format_double(r.mean_count) << ',' << format_double(r.var_count) << ','
       << format_double(r.se_var) << ',' << format_double(ratio[i]) << ','
       << format_double(fluct[i]) << ',' << format_double(fitted_slope) << '\n';
  }
  return os.str();
}

McEstimate mc_bipotential_check(double t, long trials, SeedSpec seed) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("mc_bipotential_check: t in [0, 1]");
  if (trials < 10000) throw std::invalid_argument("mc_bipotential_check: trials >= 1e4");
  CounterRng rng(seed);
  const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  double sum = 0.0, sum2 = 0.0;
  for (long i = 0; i < trials; ++i) {
    const Cx xi1 = rng.complex_normal();
    const Cx xi2 = rng.complex_normal();
    const Cx y2 = t * xi1 + s * xi2;
    const double v = std::log(std::abs(xi1)) * std::log(std::abs(y2));
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / double(trials);
  const double var = std::max(0.0, sum2 / double(trials) - mean * mean);
  return {mean, std::sqrt(var / double(trials))};
}

// ---------------------------------------------------------------------------
// Config parsing.

Domain domain_from_config(const std::string& kind, const std::vector<double>& params) {
  if (kind == "disk") {
    if (params.size() != 3) throw std::invalid_argument("disk params: [cx, cy, r]");
    return Domain::disk(Cx(params[0], params[1]), params[2]);
  }
  if (kind == "annulus") {
    if (params.size() != 4) throw std::invalid_argument("annulus params: [cx, cy, r_inner, r_outer]");
    return Domain::annulus(Cx(params[0], params[1]), params[2], params[3]);
  }
  if (kind == "rectangle") {
    if (params.size() != 4) throw std::invalid_argument("rectangle params: [x0, y0, x1, y1]");
    return Domain::rectangle(Cx(params[0], params[1]), Cx(params[2], params[3]));
  }
  if (kind == "ball") {
    if (params.size() == 2) return Domain::ball(int(params[0]), params[1]);
    if (params.size() >= 3 && params.size() % 2 == 1) {
      std::vector<Cx> center;
      for (size_t i = 0; i + 1 < params.size(); i += 2) center.emplace_back(params[i], params[i + 1]);
      return Domain::ball(std::move(center), params.back());
    }
    throw std::invalid_argument("ball params: [m, r] or [c1x, c1y, ..., r]");
  }
  throw std::invalid_argument("unknown domain kind: " + kind);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

TomlLite TomlLite::parse_string(const std::string& text) {
  TomlLite toml;
  std::istringstream in(text);
  std::string line, section;
  while (std::getline(in, line)) {
    // strip comments outside strings
    bool in_str = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_str = !in_str;
      if (line[i] == '#' && !in_str) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument("toml: malformed section: " + line);
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("toml: expected key = value: " + line);
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!section.empty()) key = section + "." + key;
    toml.values_[key] = value;
  }
  return toml;
}

TomlLite TomlLite::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("toml: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

bool TomlLite::has(const std::string& key) const { return values_.count(key) > 0; }

std::string TomlLite::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw std::invalid_argument("toml: missing key " + key);
  std::string v = it->second;
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

long long TomlLite::get_int(const std::string& key) const { return std::stoll(get_string(key)); }

double TomlLite::get_double(const std::string& key) const { return std::stod(get_string(key)); }

std::vector<double> TomlLite::get_double_array(const std::string& key) const {
  const std::string raw = get_string(key);
  if (raw.empty() || raw.front() != '[' || raw.back() != ']')
    throw std::invalid_argument("toml: expected array for " + key);
  std::vector<double> out;
  std::string body = raw.substr(1, raw.size() - 2);
  std::istringstream in(body);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

std::vector<long long> TomlLite::get_int_array(const std::string& key) const {
  std::vector<long long> out;
  for (double v : get_double_array(key)) out.push_back(llround(v));
  return out;
}

ExperimentConfig config_from_toml(const TomlLite& toml) {
  ExperimentConfig cfg;
  cfg.m = int(toml.get_int("m"));
  cfg.k = toml.has("k") ? int(toml.get_int("k")) : cfg.m;
  if (toml.has("degree")) {
    cfg.degrees = {int(toml.get_int("degree"))};
  } else if (toml.has("degrees")) {
    cfg.degrees.clear();
    for (long long n : toml.get_int_array("degrees")) cfg.degrees.push_back(int(n));
  } else {
    throw std::invalid_argument("config: degree or degrees required");
  }
  cfg.domain = domain_from_config(toml.get_string("domain.kind"), toml.get_double_array("domain.params"));
  cfg.trials = toml.get_int("trials");
  cfg.master_seed = std::uint64_t(toml.get_int("seed"));
  if (toml.has("method")) {
    const std::string m = toml.get_string("method");
    cfg.method = m == "enumerate" ? CountingMethod::Enumerate
               : m == "contour"   ? CountingMethod::Contour
                                  : CountingMethod::Auto;
  }
  if (toml.has("workers")) cfg.workers = int(toml.get_int("workers"));
  if (toml.has("out_prefix")) cfg.out_prefix = toml.get_string("out_prefix");
  return cfg;
}

}  // namespace zvar
