#pragma once

#include <optional>
#include <span>
#include <vector>

#include "speig/dense_block.hpp"
#include "speig/error.hpp"
#include "speig/sparse.hpp"

namespace speig {

// Endpoints of the spectrum plus the affine map (x - c)/e taking
// [lambda_min, lambda_max] onto [-1, 1].
class SpectralBounds {
 public:
  SpectralBounds(double lambda_min, double lambda_max);

  double lambda_min() const { return min_; }
  double lambda_max() const { return max_; }
  double center() const { return c_; }
  double half_width() const { return e_; }

  double to_unit(double z) const { return (z - c_) / e_; }

 private:
  double min_, max_, c_, e_;
};

// Library-wide default tolerance of the automatic degree selection,
// calibrated so that the auto degree is 48 for [0.1, 0.3] and 10 for
// [-1, -0.5] on unit bounds.
inline constexpr double kDefaultFilterEpsilon = 0.255;
inline constexpr int kDefaultMaxDegree = 1000;

// Chebyshev coefficients b_0..b_degree of the indicator of
// [alpha_s, beta_s] within [-1, 1]:
//   b_0 = (acos(alpha) - acos(beta))/pi
//   b_i = 2 (sin(i acos(alpha)) - sin(i acos(beta)))/(i pi)
std::vector<double> indicator_coefficients(double alpha_s, double beta_s, int degree);

// Weighted Chebyshev 2-norm squared of a coefficient vector:
// pi*b_0^2 + (pi/2) * sum_{i>=1} b_i^2.
double chebyshev_norm_sq(std::span<const double> coeffs);

struct DegreeSelection {
  int degree;
  bool clamped;  // hit max_degree before reaching the tolerance
};

// Smallest degree m >= 1 whose truncation error falls under the tolerance;
// see README for the normalization convention.
DegreeSelection select_degree(double alpha_s, double beta_s, double epsilon,
                              int max_degree = kDefaultMaxDegree);

// Backward (Clenshaw) evaluation of sum_i coeffs[i] T_i(t), t in [-1, 1].
double clenshaw(std::span<const double> coeffs, double t);

// Truncated Chebyshev expansion p_m of the indicator of [alpha, beta],
// expressed over the spectral bounds' unit interval.
class ChebyshevFilter {
 public:
  // Maps [alpha, beta] through the bounds (clipping into [-1, 1]) and fills
  // the analytic coefficients for the given degree.
  ChebyshevFilter(const SpectralBounds& bounds, double alpha, double beta, int degree);

  // Wraps an arbitrary coefficient vector (used by tests and identity filters).
  static ChebyshevFilter from_coefficients(const SpectralBounds& bounds,
                                           double alpha, double beta,
                                           std::vector<double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coefficients() const { return coeffs_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double alpha_mapped() const { return alpha_s_; }
  double beta_mapped() const { return beta_s_; }
  const SpectralBounds& bounds() const { return bounds_; }
  bool degree_clamped() const { return degree_clamped_; }

  // p_m((z - c)/e) for z in original coordinates.
  double evaluate(double z) const;

  // Y = p_m((A - cI)/e) X via the block Clenshaw recurrence; performs exactly
  // degree() block multiplications with A.
  void apply(const SparseSymMatrix& A, const DenseBlock& X, DenseBlock& Y) const;
  DenseBlock apply(const SparseSymMatrix& A, const DenseBlock& X) const;

 private:
  friend ChebyshevFilter build_filter(const SpectralBounds&, double, double,
                                      std::optional<int>, double, int);
  SpectralBounds bounds_;
  double alpha_, beta_, alpha_s_, beta_s_;
  std::vector<double> coeffs_;
  bool degree_clamped_ = false;
};

// Maps the interval, picks the degree automatically unless one is supplied,
// and fills the coefficients.  Throws IntervalError when [alpha, beta] lies
// entirely outside the bounds or alpha >= beta.
ChebyshevFilter build_filter(const SpectralBounds& bounds, double alpha, double beta,
                             std::optional<int> degree = std::nullopt,
                             double epsilon = kDefaultFilterEpsilon,
                             int max_degree = kDefaultMaxDegree);

}  // namespace speig
