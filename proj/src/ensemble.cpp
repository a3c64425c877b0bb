#include "zvar/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zvar/special.hpp"

namespace zvar {

double log_weight(int N, const MultiIndex& J) {
  const int total = J.total();
  if (total > N) throw std::invalid_argument("log_weight: |J| > N");
  double lw = log_factorial(N) - log_factorial(N - total);
  for (int j : J.entries) {
    if (j < 0) throw std::invalid_argument("log_weight: negative index");
    lw -= log_factorial(j);
  }
  return 0.5 * lw;
}

long long coefficient_count(int m, int N) {
  // binomial(N + m, m) in exact integer arithmetic
  long long c = 1;
  for (int i = 1; i <= m; ++i) c = c * (N + i) / i;
  return c;
}

namespace {

void enumerate_rec(int m, int N, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (int(cur.size()) == m) {
    out.emplace_back(cur);
    return;
  }
  int used = 0;
  for (int j : cur) used += j;
  for (int j = 0; j <= N - used; ++j) {
    cur.push_back(j);
    enumerate_rec(m, N, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(int m, int N) {
  std::vector<MultiIndex> out;
  out.reserve(size_t(coefficient_count(m, N)));
  std::vector<int> cur;
  enumerate_rec(m, N, cur, out);
  return out;
}

RandomPolynomial::RandomPolynomial(int m, int N, std::vector<Cx> raw_coeffs)
    : m_(m), N_(N), coeffs_(std::move(raw_coeffs)) {
  if (m < 1 || N < 1) throw std::invalid_argument("RandomPolynomial: m >= 1, N >= 1");
  if (static_cast<long long>(coeffs_.size()) != zvar::coefficient_count(m, N))
    throw std::invalid_argument("RandomPolynomial: coefficient count != binomial(N+m, m)");
}

const std::vector<MultiIndex>& RandomPolynomial::multi_indices() const {
  if (index_cache_.empty()) index_cache_ = enumerate_multi_indices(m_, N_);
  return index_cache_;
}

namespace {

// Flat position of J in the enumeration order (m small; linear scan is
// avoided via the closed-form offsets for m = 1, 2).
int flat_index(int m, int N, const MultiIndex& J) {
  if (J.dim() != m) throw std::invalid_argument("flat_index: dimension mismatch");
  if (m == 1) return J.entries[0];
  if (m == 2) {
    const int j1 = J.entries[0], j2 = J.entries[1];
    // preceding blocks j1' < j1 have N+1-j1' entries each
    return j1 * (N + 1) - j1 * (j1 - 1) / 2 + j2;
  }
  const auto idx = enumerate_multi_indices(m, N);
  for (int i = 0; i < int(idx.size()); ++i)
    if (idx[i].entries == J.entries) return i;
  throw std::invalid_argument("flat_index: index out of range");
}

}  // namespace

Cx RandomPolynomial::coeff(const MultiIndex& J) const {
  if (J.total() > N_) throw std::invalid_argument("coeff: |J| > N");
  return coeffs_[size_t(flat_index(m_, N_, J))];
}

void RandomPolynomial::set_coeff(const MultiIndex& J, Cx value) {
  if (J.total() > N_) throw std::invalid_argument("set_coeff: |J| > N");
  coeffs_[size_t(flat_index(m_, N_, J))] = value;
}

std::vector<Cx> RandomPolynomial::weighted_coeffs_1d() const {
  if (m_ != 1) throw std::invalid_argument("weighted_coeffs_1d: m = 1 only");
  std::vector<Cx> a(coeffs_.size());
  for (int j = 0; j <= N_; ++j) {
    const double lw = 0.5 * (log_factorial(N_) - log_factorial(N_ - j) - log_factorial(j));
    a[j] = coeffs_[j] * std::exp(lw);
  }
  return a;
}

RandomPolynomial sample(int m, int N, SeedSpec seed, std::uint64_t lane) {
  const size_t count = size_t(coefficient_count(m, N));
  CounterRng rng(seed, lane);
  std::vector<Cx> c(count);
  for (auto& v : c) v = rng.complex_normal();
  return RandomPolynomial(m, N, std::move(c));
}

PolySystem sample_system(int m, int N, int k, SeedSpec seed, std::uint64_t lane_base) {
  if (k < 1 || k > m) throw std::invalid_argument("sample_system: requires 1 <= k <= m");
  PolySystem sys;
  sys.polys.reserve(size_t(k));
  for (int l = 0; l < k; ++l) sys.polys.push_back(sample(m, N, seed, lane_base + std::uint64_t(l)));
  return sys;
}

namespace {

Cx horner_1d(const std::vector<Cx>& a, Cx z) {
  Cx acc = 0.0;
  for (int j = int(a.size()) - 1; j >= 0; --j) acc = acc * z + a[j];
  return acc;
}

}  // namespace

Cx evaluate_logspace(const RandomPolynomial& p, const AffinePoint& z) {
  if (z.dim() != p.m()) throw std::invalid_argument("evaluate: dimension mismatch");
  const auto& idx = p.multi_indices();
  const auto& c = p.coeffs();
  // log z_a (any branch; exponents are integers so the branch cancels)
  std::vector<Cx> logz(size_t(p.m()), Cx(0.0));
  std::vector<bool> zero(size_t(p.m()), false);
  for (int a = 0; a < p.m(); ++a) {
    if (z.coords[a] == Cx(0.0))
      zero[a] = true;
    else
      logz[a] = std::log(z.coords[a]);
  }
  struct Term {
    double mag;
    Cx log_term;
    size_t i;
  };
  std::vector<Term> terms;
  terms.reserve(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == Cx(0.0)) continue;
    Cx lt = log_weight(p.degree(), idx[i]);
    bool vanishes = false;
    for (int a = 0; a < p.m(); ++a) {
      const int j = idx[i].entries[a];
      if (j == 0) continue;
      if (zero[a]) {
        vanishes = true;
        break;
      }
      lt += double(j) * logz[a];
    }
    if (vanishes) continue;
    terms.push_back({lt.real() + std::log(std::abs(c[i])), lt, i});
  }
  if (terms.empty()) return 0.0;
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.mag < y.mag; });
  const double mmax = terms.back().mag;
  // accumulate smallest first, relative to the dominant magnitude
  Cx acc = 0.0;
  for (const Term& t : terms) acc += c[t.i] * std::exp(t.log_term - mmax);
  return acc * std::exp(mmax);
}

Cx evaluate(const RandomPolynomial& p, const AffinePoint& z) {
  if (p.m() == 1 && p.degree() <= 600) return horner_1d(p.weighted_coeffs_1d(), z.scalar());
  return evaluate_logspace(p, z);
}

Cx log_derivative_1d(const RandomPolynomial& p, Cx z) {
  if (p.m() != 1) throw std::invalid_argument("log_derivative_1d: m = 1 only");
  const int N = p.degree();
  const auto& c = p.coeffs();
  if (N <= 600) {
    const std::vector<Cx> a = p.weighted_coeffs_1d();
    Cx pv = 0.0, dv = 0.0;
    for (int j = N; j >= 0; --j) {
      dv = dv * z + pv;
      pv = pv * z + a[j];
    }
    return dv / pv;
  }
  // Scale every term by the dominant log-magnitude at this |z|.
  const double t = std::log(std::abs(z));
  double mmax = -1e300;
  std::vector<double> lw(size_t(N + 1), 0.0);
  for (int j = 0; j <= N; ++j) {
    lw[j] = 0.5 * (log_factorial(N) - log_factorial(N - j) - log_factorial(j));
    mmax = std::max(mmax, lw[j] + j * t);
  }
  const double phase = std::arg(z);
  Cx pv = 0.0, dv = 0.0;
  for (int j = 0; j <= N; ++j) {
    const Cx term = c[j] * std::exp(lw[j] + j * t - mmax) * std::polar(1.0, j * phase);
    pv += term;
    if (j >= 1) dv += double(j) * term / z;
  }
  return dv / pv;
}

}  // namespace zvar
