#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "zvar/bipotential.hpp"
#include "zvar/errors.hpp"
#include "zvar/harness.hpp"
#include "zvar/roots.hpp"
#include "zvar/variance.hpp"

using namespace zvar;

TEST_CASE("expected count closed forms") {
  CHECK(expected_count(1, 12, Domain::disk(Cx(0.0), 1.0)) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(expected_count(1, 10, Domain::disk(Cx(0.0), 2.0)) ==
        doctest::Approx(10.0 * 4.0 / 5.0).epsilon(1e-12));
  CHECK(expected_count(2, 10, Domain::ball(2, 1.0)) == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("toml subset parser") {
  const TomlLite t = TomlLite::parse_string(
      "# comment\n"
      "m = 1\n"
      "degrees = [10, 20, 50]\n"
      "trials = 1000  # inline comment\n"
      "seed = 42\n"
      "method = \"enumerate\"\n"
      "[domain]\n"
      "kind = \"annulus\"\n"
      "params = [0.0, 0.0, 0.5, 1.0]\n");
  CHECK(t.get_int("m") == 1);
  CHECK(t.get_int("trials") == 1000);
  CHECK(t.get_string("method") == "enumerate");
  CHECK(t.get_string("domain.kind") == "annulus");
  CHECK(t.get_double_array("domain.params").size() == 4);
  const ExperimentConfig cfg = config_from_toml(t);
  CHECK(cfg.degrees.size() == 3);
  CHECK(cfg.method == CountingMethod::Enumerate);
  CHECK(cfg.domain.describe().find("annulus") == 0);
}

TEST_CASE("bernoulli experiment at N = 1") {
  ExperimentConfig cfg;
  cfg.degrees = {1};
  cfg.domain = Domain::disk(Cx(0.0), 1.0);
  cfg.trials = 20000;
  cfg.master_seed = 7;
  cfg.with_exact_variance = false;
  const ExperimentSummary s = run_counting_experiment(cfg);
  const DegreeRecord& r = s.records[0];
  CHECK(std::abs(r.mean_count - 0.5) <= 3.0 * r.se_mean);
  // at p = 1/2 the fourth-moment term m4 - var^2 vanishes, so the
  // remaining fluctuation of s^2 is the quadratic (mean - 1/2)^2 term
  CHECK(std::abs(r.var_count - 0.25) <= 3.0 * r.se_var + 9.0 * r.se_mean * r.se_mean);
  CHECK(r.rejected_trials == 0);
  CHECK(r.expected_count_exact == doctest::Approx(0.5));
}

TEST_CASE("experiment summaries are reproducible and worker-independent") {
  ExperimentConfig cfg;
  cfg.degrees = {6};
  cfg.domain = Domain::annulus(Cx(0.0), 0.5, 1.0);
  cfg.trials = 2000;
  cfg.master_seed = 123;
  cfg.with_exact_variance = false;
  const std::string a = run_counting_experiment(cfg).to_csv();
  const std::string b = run_counting_experiment(cfg).to_csv();
  cfg.workers = 3;
  const std::string c = run_counting_experiment(cfg).to_csv();
  CHECK(a == b);
  CHECK(a == c);
  cfg.master_seed = 124;
  cfg.workers = 1;
  CHECK(run_counting_experiment(cfg).to_csv() != a);
}

TEST_CASE("mean and variance against the exact evaluators") {
  ExperimentConfig cfg;
  cfg.degrees = {20};
  cfg.domain = Domain::disk(Cx(0.0), 1.0);
  cfg.trials = 20000;
  cfg.master_seed = 2718;
  const ExperimentSummary s = run_counting_experiment(cfg);
  const DegreeRecord& r = s.records[0];
  CHECK(std::abs(r.mean_count - r.expected_count_exact) <= 3.0 * r.se_mean);
  CHECK(std::abs(r.var_count - r.exact_variance) <= 3.0 * r.se_var);
}

TEST_CASE("contour and enumerate methods give identical summaries") {
  ExperimentConfig cfg;
  cfg.degrees = {15};
  cfg.domain = Domain::disk(Cx(0.0), 1.0);
  cfg.trials = 400;
  cfg.master_seed = 5;
  cfg.with_exact_variance = false;
  cfg.method = CountingMethod::Enumerate;
  const std::string a = run_counting_experiment(cfg).to_csv();
  cfg.method = CountingMethod::Contour;
  const std::string b = run_counting_experiment(cfg).to_csv();
  CHECK(a == b);
}

TEST_CASE("unitary invariance of the zero distribution") {
  // FS rotation z -> (z cos a + sin a) / (-z sin a + cos a) maps the unit
  // disk to another disk of equal FS volume, so the expected count there
  // stays N/2.
  const double a = M_PI / 8;
  const Cx p1 = (Cx(1.0) * std::cos(a) + std::sin(a)) / (Cx(-1.0) * std::sin(a) + std::cos(a));
  const Cx p2 = (Cx(-1.0) * std::cos(a) + std::sin(a)) / (Cx(1.0) * std::sin(a) + std::cos(a));
  const Cx pi_ = (Cx(0.0, 1.0) * std::cos(a) + std::sin(a)) / (Cx(0.0, -1.0) * std::sin(a) + std::cos(a));
  // circumcircle of the three image points
  const Cx w = (pi_ - p1) / (p2 - p1);
  const Cx c = (p2 - p1) * (w - std::norm(w)) / Cx(0.0, 2.0 * w.imag()) + p1;
  const double rad = std::abs(p1 - c);
  const Domain image = Domain::disk(c, rad);
  CHECK(domain_volume(image) == doctest::Approx(M_PI / 2).epsilon(1e-9));

  ExperimentConfig cfg;
  cfg.degrees = {20};
  cfg.domain = image;
  cfg.trials = 20000;
  cfg.master_seed = 31415;
  cfg.with_exact_variance = false;
  const DegreeRecord& r = run_counting_experiment(cfg).records[0];
  CHECK(std::abs(r.mean_count - 10.0) <= 3.0 * r.se_mean);
}

TEST_CASE("scaling study fits the growth law") {
  ExperimentConfig cfg;
  cfg.degrees = {16, 64, 256};
  cfg.domain = Domain::disk(Cx(0.0), 1.0);
  cfg.trials = 4000;
  cfg.master_seed = 99;
  cfg.with_exact_variance = false;
  const ScalingStudy st = scaling_study(cfg);
  CHECK(st.fitted_slope == doctest::Approx(0.5).epsilon(0.25));
  CHECK(st.ratio.size() == 3);
  // ratio drifts toward 1
  CHECK(std::abs(st.ratio[2] - 1.0) < std::abs(st.ratio[0] - 1.0) + 0.05);
  // self-averaging column shrinks
  CHECK(st.fluct[2] < st.fluct[0]);
  CHECK(st.to_csv().find("fitted_slope") != std::string::npos);
}

TEST_CASE("sample-path equidistribution along one random sequence") {
  // one fixed random sequence N = 2^j: normalized counts stay in a
  // shrinking band around Vol_FS(U)/pi = 1/2
  const Domain U = Domain::disk(Cx(0.0), 1.0);
  const double nu11 = nu_constant(1, 1);
  for (int j = 4; j <= 11; ++j) {
    const int N = 1 << j;
    const SeedSpec seed{8675309, std::uint64_t(j)};
    const RandomPolynomial p = sample(1, N, seed);
    const int count = N <= 200 ? count_in_domain(all_roots(p), U) : count_zeros_contour(p, U);
    const double band = 5.0 * std::sqrt(nu11 * M_PI * std::sqrt(double(N))) / N;
    CHECK(std::abs(double(count) / N - 0.5) <= band);
  }
}

TEST_CASE("mc bipotential check at the endpoints") {
  const McEstimate e0 = mc_bipotential_check(0.0, 200000, {1, 0});
  CHECK(std::abs(e0.estimate - g_moment(0.0)) <= 3.0 * e0.se);
  const McEstimate e1 = mc_bipotential_check(1.0, 200000, {1, 0});
  CHECK(std::abs(e1.estimate - g_moment(1.0)) <= 3.0 * e1.se);
  CHECK_THROWS(mc_bipotential_check(0.5, 100, {1, 0}));
  CHECK_THROWS(mc_bipotential_check(1.5, 100000, {1, 0}));
}

TEST_CASE("m = 2 experiment runs the point case") {
  ExperimentConfig cfg;
  cfg.m = 2;
  cfg.k = 2;
  cfg.degrees = {3};
  cfg.domain = Domain::ball(2, 1.0);
  cfg.trials = 400;
  cfg.master_seed = 17;
  const DegreeRecord& r = run_counting_experiment(cfg).records[0];
  CHECK(r.expected_count_exact == doctest::Approx(9.0 / 4.0));
  CHECK(std::abs(r.mean_count - 2.25) <= 4.0 * r.se_mean);
  CHECK(r.var_count > 0.0);
  CHECK(std::isnan(r.exact_variance));
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.degrees = {5};
  cfg.trials = 50;  // too few
  CHECK_THROWS(run_counting_experiment(cfg));
  cfg.trials = 1000;
  cfg.m = 2;
  cfg.k = 1;  // point counting requires k = m
  CHECK_THROWS(run_counting_experiment(cfg));
}
