#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "speig/band_eig.hpp"
#include "speig/dense_block.hpp"
#include "speig/filter.hpp"
#include "speig/sparse.hpp"

namespace speig {

struct LanczosConfig {
  int block_size = 3;          // r
  double tol = 1e-10;          // relative residual tolerance
  int max_dim = 0;             // basis-vector cap; 0 resolves to min(n, 3000)
  int check_every = 10;        // blocks between convergence checks
  std::uint64_t seed = 20177;
  int extra_ritz = 5;          // converged outside-pairs required
  int bounds_steps = 50;       // Lanczos steps for the spectral bounds
  std::optional<int> degree;   // fixed filter degree (auto when empty)
  double epsilon = kDefaultFilterEpsilon;
  int max_degree = kDefaultMaxDegree;
  bool collect_diagnostics = false;  // record the basis orthogonality error

  int resolved_max_dim(std::size_t n) const;
  void validate(std::size_t n) const;  // throws Error on bad settings
};

enum class OperatorKind { plain, filtered };

// The operator the Krylov space is built with: A itself or p(A).
class BlockOperator {
 public:
  static BlockOperator plain(const SparseSymMatrix& A) { return {&A, nullptr}; }
  static BlockOperator filtered(const SparseSymMatrix& A, const ChebyshevFilter& f) {
    return {&A, &f};
  }

  OperatorKind kind() const {
    return filter_ ? OperatorKind::filtered : OperatorKind::plain;
  }
  const SparseSymMatrix& matrix() const { return *matrix_; }
  const ChebyshevFilter* filter() const { return filter_; }

  void apply(const DenseBlock& X, DenseBlock& Y) const;

 private:
  BlockOperator(const SparseSymMatrix* A, const ChebyshevFilter* f)
      : matrix_(A), filter_(f) {}
  const SparseSymMatrix* matrix_;
  const ChebyshevFilter* filter_;
};

class LanczosFactorization;

struct ExpandTimes {
  double mv_s = 0.0;
  double orth_s = 0.0;
};

// Runs `nblocks` block Lanczos steps (fewer if the space is exhausted or the
// column budget runs out).  Returns the number of blocks actually added.
int expand(LanczosFactorization& st, int nblocks, ExpandTimes* times = nullptr);

// Block Lanczos factorization op(A) Q_k = Q_{k+1} T~_k with full
// reorthogonalization.  The basis holds k completed blocks (k*r columns)
// plus one pending block; D_i are the r x r diagonal blocks and S_i the
// upper-triangular couplings, S_k referring to the pending block.
class LanczosFactorization {
 public:
  LanczosFactorization(const BlockOperator& op, DenseBlock start, std::size_t max_cols);

  std::size_t n() const { return n_; }
  std::size_t block_size() const { return r_; }
  std::size_t block_count() const { return k_; }
  std::size_t basis_size() const { return k_ * r_; }
  OperatorKind kind() const { return op_->kind(); }
  const BlockOperator& op() const { return *op_; }

  const double* basis_col(std::size_t j) const { return basis_.col(j); }
  const double* pending_col(std::size_t j) const { return basis_.col(k_ * r_ + j); }

  // D_i and S_i as row-major r x r blocks (i in [0, block_count)).
  const std::vector<std::vector<double>>& diag_blocks() const { return D_; }
  const std::vector<std::vector<double>>& sub_blocks() const { return S_; }

  // Columns replaced by random restarts whose replacement failed (the whole
  // space is spanned); such columns are exactly zero.
  const std::vector<std::uint8_t>& dead_cols() const { return dead_; }
  bool space_exhausted() const { return exhausted_; }
  bool had_breakdown() const { return breakdown_; }

  // Largest |Q^T Q - I| over live basis columns.
  double ortho_error() const;
  // Largest asymmetry |D_i - D_i^T| observed before symmetrization.
  double max_diag_asymmetry() const { return max_diag_asym_; }

 private:
  friend int expand(LanczosFactorization&, int, ExpandTimes*);
  const BlockOperator* op_;
  std::size_t n_, r_, k_ = 0;
  std::size_t max_cols_;
  DenseBlock basis_;  // n x (max_cols + r); first k*r + r columns in use
  std::vector<std::vector<double>> D_, S_;
  std::vector<std::uint8_t> dead_;
  bool exhausted_ = false;
  bool breakdown_ = false;
  double max_diag_asym_ = 0.0;
  double op_scale_ = 0.0;  // running max column norm of operator outputs
  std::uint64_t rng_state_;
};

// T_k as a banded symmetric matrix of semi-bandwidth min(r, kr-1),
// diagonal blocks symmetrized.
SymBandMatrix assemble_projected(const LanczosFactorization& st);

struct RitzSet {
  std::vector<double> values;  // descending
  DenseBlock vectors;          // kr x kr, columns matching `values`
  std::vector<double> residual_estimates;
  std::vector<std::uint8_t> wanted;
  std::vector<std::uint8_t> dead;  // pairs living on dead columns
  bool converged = false;
};

// Solves the projected problem and classifies Ritz pairs.  In filtered mode
// a pair is wanted when its Ritz value reaches min(p(alpha), p(beta)); in
// plain mode when it lies in [alpha, beta].  Converged means every wanted
// pair and the `extra_ritz` nearest unwanted pairs have residual estimates
// below tol * max|T_k|.
RitzSet check_convergence(const LanczosFactorization& st, double alpha, double beta,
                          double tol, int extra_ritz);

struct SolveStats {
  int block_steps = 0;      // k
  int basis_vectors = 0;    // k * r
  int degree = 0;           // filter degree (0 in plain mode)
  std::uint64_t mv_iteration = 0;  // matvecs spent expanding the basis
  std::uint64_t mv_bounds = 0;     // matvecs spent estimating the bounds
  std::uint64_t mv_total = 0;
  double time_total_s = 0.0;
  double time_preproc_s = 0.0;
  double time_orth_s = 0.0;
  double time_mv_s = 0.0;
  int checks = 0;
  bool converged = false;
  bool breakdown_replacements = false;
  bool degree_clamped = false;
  double norm_estimate = 0.0;     // ||A|| estimate from the spectral bounds
  double lambda_min_est = 0.0;
  double lambda_max_est = 0.0;
  double ortho_error = -1.0;      // set when collect_diagnostics is on
};

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending, inside [alpha, beta]
  DenseBlock eigenvectors;          // n x eigenvalues.size(), unit columns
  std::vector<double> residuals;    // ||A v - lambda v|| / ||A||_est
  SolveStats stats;
};

// Estimates [lambda_min, lambda_max] with a short single-vector Lanczos run
// (full reorthogonalization), widens each Ritz bound by its residual
// estimate plus 0.5% of the width.  Throws Error for n < 2 or a zero-width
// spectrum (multiple of the identity).
SpectralBounds estimate_spectral_bounds(const SparseSymMatrix& A, int steps,
                                        std::uint64_t seed = 20177);

// Deterministic random orthonormal n x r starting block.
DenseBlock init_block(std::size_t n, std::size_t r, std::uint64_t seed);

// Lifts the wanted Ritz pairs, recovering eigenvalues of A by Rayleigh
// quotients (filtered mode) or using the Ritz values directly (plain mode);
// pairs outside [alpha, beta] are discarded, the rest sorted ascending.
EigenResult recover_eigenpairs(const LanczosFactorization& st,
                               const SparseSymMatrix& A, double alpha, double beta,
                               const RitzSet& ritz, double norm_estimate);

// Full solves: bounds estimation, (filter construction,) block Lanczos with
// periodic convergence checks, eigenpair recovery.
EigenResult filtered_lanczos(const SparseSymMatrix& A, double alpha, double beta,
                             const LanczosConfig& config = {});
EigenResult plain_lanczos(const SparseSymMatrix& A, double alpha, double beta,
                          const LanczosConfig& config = {});

}  // namespace speig
