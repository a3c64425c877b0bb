#include "zvar/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace zvar {

double riemann_zeta(double s) {
  if (s <= 1.0) throw std::invalid_argument("riemann_zeta: requires s > 1");
  // Direct sum to n = K-1, then Euler-Maclaurin starting at K.
  constexpr int K = 24;
  double sum = 0.0;
  for (int n = 1; n < K; ++n) sum += std::pow(n, -s);
  const double Ks = std::pow(K, -s);
  sum += Ks * K / (s - 1.0) + 0.5 * Ks;
  // Bernoulli terms B_2j / (2j)! * s(s+1)...(s+2j-2) * K^{-s-2j+1}
  static const double bern[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
  double rising = s;       // s(s+1)...(s+2j-2), starts with one factor for j=1
  double kpow = Ks / K;    // K^{-s-2j+1}
  double fact = 2.0;       // (2j)!
  for (int j = 1; j <= 6; ++j) {
    sum += bern[j - 1] / fact * rising * kpow;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= (2 * j + 1) * (2 * j + 2);
    kpow /= double(K) * double(K);
  }
  return sum;
}

double gamma_half_integer(int m) {
  if (m < 0) throw std::invalid_argument("gamma_half_integer: m >= 0");
  double g = std::sqrt(M_PI);  // Gamma(1/2)
  for (int i = 0; i < m; ++i) g *= (i + 0.5);
  return g;
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: n >= 0");
  static std::vector<double> table = [] {
    std::vector<double> t(4097);
    t[0] = 0.0;
    for (int i = 1; i < int(t.size()); ++i) t[i] = t[i - 1] + std::log(double(i));
    return t;
  }();
  if (n < int(table.size())) return table[n];
  return std::lgamma(double(n) + 1.0);
}

namespace {

GaussLegendre compute_gauss_legendre(int n) {
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

}  // namespace zvar
