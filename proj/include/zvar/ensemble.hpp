#pragma once

#include <cstdint>
#include <vector>

#include "zvar/geometry.hpp"
#include "zvar/rng.hpp"

namespace zvar {

/// Exponent multi-index J = (j_1, ..., j_m), |J| <= N.
struct MultiIndex {
  std::vector<int> entries;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : entries(std::move(e)) {}
  MultiIndex(std::initializer_list<int> e) : entries(e) {}

  int dim() const { return int(entries.size()); }
  int total() const {
    int s = 0;
    for (int j : entries) s += j;
    return s;
  }
};

/// Half the log of the multinomial coefficient (N choose J); the weight
/// sqrt((N choose J)) multiplying the monomial z^J.  Computed in log
/// space via log-gamma.
double log_weight(int N, const MultiIndex& J);

/// Gaussian random polynomial p(z) = sum_J c_J sqrt((N choose J)) z^J
/// on the m-dimensional chart.  Stores the raw i.i.d. standard complex
/// Gaussian coefficients c_J; weights are folded in at evaluation time.
class RandomPolynomial {
 public:
  RandomPolynomial(int m, int N, std::vector<Cx> raw_coeffs);

  int m() const { return m_; }
  int degree() const { return N_; }
  int coefficient_count() const { return int(coeffs_.size()); }

  const std::vector<Cx>& coeffs() const { return coeffs_; }
  Cx coeff(const MultiIndex& J) const;
  void set_coeff(const MultiIndex& J, Cx value);

  /// Enumeration order of multi-indices backing coeffs(); index i of the
  /// flat array corresponds to multi_indices()[i].
  const std::vector<MultiIndex>& multi_indices() const;

  /// Weighted univariate coefficients a_j = c_j sqrt(C(N, j)), m = 1.
  std::vector<Cx> weighted_coeffs_1d() const;

 private:
  int m_, N_;
  std::vector<Cx> coeffs_;
  mutable std::vector<MultiIndex> index_cache_;
};

/// System of k polynomials sharing (m, N), k <= m.
struct PolySystem {
  std::vector<RandomPolynomial> polys;
  int k() const { return int(polys.size()); }
};

/// The flat enumeration of all J with |J| <= N (graded lexicographic by
/// construction for m = 1; nested loops j_1, then j_2, ... in general).
std::vector<MultiIndex> enumerate_multi_indices(int m, int N);

/// Number of coefficients, binomial(N + m, m).
long long coefficient_count(int m, int N);

/// Draw a polynomial; deterministic function of the seed.  `lane`
/// separates components of a system and rejection re-draws.
RandomPolynomial sample(int m, int N, SeedSpec seed, std::uint64_t lane = 0);

/// p(z).  For m = 1 and moderate N this is a Horner evaluation of the
/// weighted coefficients; otherwise terms c_J exp(log_weight + J.log z)
/// are accumulated in magnitude-sorted order.
Cx evaluate(const RandomPolynomial& p, const AffinePoint& z);

/// Log-space evaluation path, usable at any degree.
Cx evaluate_logspace(const RandomPolynomial& p, const AffinePoint& z);

/// Robust p'(z)/p(z) for m = 1 (argument-principle integrand); scales by
/// the dominant term so it works far beyond the overflow range of the
/// weighted coefficients.
Cx log_derivative_1d(const RandomPolynomial& p, Cx z);

/// k independent components, component l drawn on lane `lane_base + l`.
PolySystem sample_system(int m, int N, int k, SeedSpec seed, std::uint64_t lane_base = 0);

}  // namespace zvar
