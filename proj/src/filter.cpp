#include "speig/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "speig/kernels.hpp"

namespace speig {

namespace {

constexpr double kPi = std::numbers::pi;

void check_unit_interval(double alpha_s, double beta_s) {
  if (!(alpha_s < beta_s))
    throw IntervalError("filter interval endpoints out of order");
  if (alpha_s < -1.0 || beta_s > 1.0)
    throw IntervalError("filter interval endpoints outside [-1, 1]");
}

}  // namespace

SpectralBounds::SpectralBounds(double lambda_min, double lambda_max)
    : min_(lambda_min),
      max_(lambda_max),
      c_(0.5 * (lambda_min + lambda_max)),
      e_(0.5 * (lambda_max - lambda_min)) {
  if (!(lambda_min < lambda_max))
    throw IntervalError("spectral bounds require lambda_min < lambda_max");
}

std::vector<double> indicator_coefficients(double alpha_s, double beta_s, int degree) {
  check_unit_interval(alpha_s, beta_s);
  if (degree < 0) throw Error("indicator_coefficients: negative degree");

  const double ta = std::acos(alpha_s);
  const double tb = std::acos(beta_s);
  std::vector<double> b(static_cast<std::size_t>(degree) + 1);
  b[0] = (ta - tb) / kPi;
  for (int i = 1; i <= degree; ++i)
    b[i] = 2.0 * (std::sin(i * ta) - std::sin(i * tb)) / (i * kPi);
  return b;
}

double chebyshev_norm_sq(std::span<const double> coeffs) {
  if (coeffs.empty()) return 0.0;
  double tail = 0.0;
  for (std::size_t i = 1; i < coeffs.size(); ++i) tail += coeffs[i] * coeffs[i];
  return kPi * coeffs[0] * coeffs[0] + 0.5 * kPi * tail;
}

DegreeSelection select_degree(double alpha_s, double beta_s, double epsilon,
                              int max_degree) {
  check_unit_interval(alpha_s, beta_s);
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error("select_degree: epsilon must lie in (0, 1)");
  if (max_degree < 1) throw Error("select_degree: max_degree must be >= 1");

  // Truncation error by Parseval: ||p_m - phi||^2 = (pi/2) sum_{i>m} b_i^2,
  // with an O(1/i^2) coefficient tail capped at N terms.  The error is
  // measured against the plain L2 size of the indicator, sqrt(beta - alpha);
  // this normalization is what reproduces the reference degrees for both
  // interior and edge intervals with a single epsilon.
  const std::size_t cap = std::max<std::size_t>(10000, 20 * static_cast<std::size_t>(max_degree));
  const double ta = std::acos(alpha_s);
  const double tb = std::acos(beta_s);

  std::vector<double> sq(cap + 1, 0.0);  // sq[i] = b_i^2, i >= 1
  for (std::size_t i = 1; i <= cap; ++i) {
    const double bi = 2.0 * (std::sin(i * ta) - std::sin(i * tb)) / (i * kPi);
    sq[i] = bi * bi;
  }
  // suffix[m] = sum_{i = m+1 .. cap} b_i^2, summed smallest-first
  std::vector<double> suffix(cap + 2, 0.0);
  for (std::size_t i = cap; i >= 1; --i) suffix[i] = suffix[i + 1] + sq[i];

  const double threshold = epsilon * std::sqrt(beta_s - alpha_s);
  for (int m = 1; m <= max_degree; ++m) {
    const double err = std::sqrt(0.5 * kPi * suffix[m + 1]);
    if (err < threshold) return {m, false};
  }
  return {max_degree, true};
}

double clenshaw(std::span<const double> coeffs, double t) {
  if (coeffs.empty()) return 0.0;
  double y1 = 0.0;
  double y2 = 0.0;
  for (std::size_t j = coeffs.size() - 1; j >= 1; --j) {
    const double y = 2.0 * t * y1 - y2 + coeffs[j];
    y2 = y1;
    y1 = y;
  }
  return t * y1 - y2 + coeffs[0];
}

ChebyshevFilter::ChebyshevFilter(const SpectralBounds& bounds, double alpha,
                                 double beta, int degree)
    : bounds_(bounds), alpha_(alpha), beta_(beta) {
  if (!(alpha < beta)) throw IntervalError("filter interval requires alpha < beta");
  alpha_s_ = std::clamp(bounds.to_unit(alpha), -1.0, 1.0);
  beta_s_ = std::clamp(bounds.to_unit(beta), -1.0, 1.0);
  if (!(alpha_s_ < beta_s_))
    throw IntervalError("interval lies outside the spectral bounds");
  coeffs_ = indicator_coefficients(alpha_s_, beta_s_, degree);
}

ChebyshevFilter ChebyshevFilter::from_coefficients(const SpectralBounds& bounds,
                                                   double alpha, double beta,
                                                   std::vector<double> coeffs) {
  if (coeffs.empty()) throw Error("filter needs at least one coefficient");
  ChebyshevFilter f(bounds, alpha, beta, 0);
  f.coeffs_ = std::move(coeffs);
  return f;
}

double ChebyshevFilter::evaluate(double z) const {
  return clenshaw(coeffs_, bounds_.to_unit(z));
}

void ChebyshevFilter::apply(const SparseSymMatrix& A, const DenseBlock& X,
                            DenseBlock& Y) const {
  if (X.rows() != A.dim())
    throw DimensionError("apply_filter: block rows do not match matrix dimension");
  const std::size_t total = X.rows() * X.cols();
  const int m = degree();
  const double inv_e = 1.0 / bounds_.half_width();
  const double c = bounds_.center();

  if (Y.rows() != X.rows() || Y.cols() != X.cols()) Y = DenseBlock(X.rows(), X.cols());

  if (m == 0) {
    for (std::size_t i = 0; i < total; ++i) Y.data()[i] = coeffs_[0] * X.data()[i];
    return;
  }

  // Block Clenshaw: Y1 holds y_{j+1}, Y2 holds y_{j+2}; each step computes
  // y_j = 2*((A - cI)/e)*y_{j+1} - y_{j+2} + b_j*X with one block product.
  DenseBlock Y1(X.rows(), X.cols());
  DenseBlock Y2(X.rows(), X.cols());
  DenseBlock W(X.rows(), X.cols());

  for (std::size_t i = 0; i < total; ++i) Y1.data()[i] = coeffs_[m] * X.data()[i];

  for (int j = m - 1; j >= 1; --j) {
    A.spmm_block(Y1, W);
    kernels::clenshaw_combine(total, 2.0 * inv_e, -2.0 * c * inv_e, coeffs_[j],
                              W.data(), Y1.data(), Y2.data(), X.data(), Y2.data());
    std::swap(Y1, Y2);
  }
  A.spmm_block(Y1, W);
  kernels::clenshaw_combine(total, inv_e, -c * inv_e, coeffs_[0], W.data(),
                            Y1.data(), Y2.data(), X.data(), Y.data());
}

DenseBlock ChebyshevFilter::apply(const SparseSymMatrix& A, const DenseBlock& X) const {
  DenseBlock Y(X.rows(), X.cols());
  apply(A, X, Y);
  return Y;
}

ChebyshevFilter build_filter(const SpectralBounds& bounds, double alpha, double beta,
                             std::optional<int> degree, double epsilon,
                             int max_degree) {
  if (!(alpha < beta)) throw IntervalError("build_filter requires alpha < beta");
  const double as = std::clamp(bounds.to_unit(alpha), -1.0, 1.0);
  const double bs = std::clamp(bounds.to_unit(beta), -1.0, 1.0);
  if (!(as < bs)) throw IntervalError("interval lies outside the spectral bounds");

  int m;
  bool clamped = false;
  if (degree) {
    if (*degree < 1) throw Error("build_filter: degree must be >= 1");
    m = *degree;
  } else {
    const DegreeSelection sel = select_degree(as, bs, epsilon, max_degree);
    m = sel.degree;
    clamped = sel.clamped;
  }
  ChebyshevFilter f(bounds, alpha, beta, m);
  f.degree_clamped_ = clamped;
  return f;
}

}  // namespace speig
