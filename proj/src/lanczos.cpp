#include "speig/lanczos.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "speig/kernels.hpp"

namespace speig {

namespace {

class StopWatch {
 public:
  StopWatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + salt + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// coeffs = basis[:, 0..cols)^T * z for one column z, then z -= basis * coeffs.
// One classical Gram-Schmidt pass; coefficients are accumulated into `acc`
// when provided.
void cgs_pass(const DenseBlock& basis, std::size_t cols, double* z, std::size_t n,
              double* acc) {
  for (std::size_t i = 0; i < cols; ++i) {
    const double c = kernels::dot(basis.col(i), z, n);
    kernels::axpy(-c, basis.col(i), z, n);
    if (acc) acc[i] += c;
  }
}

}  // namespace

int LanczosConfig::resolved_max_dim(std::size_t n) const {
  if (max_dim > 0) return max_dim;
  // min(n, 3000) rounded up to whole blocks (at least two), so that runs
  // near exhaustion can promote their final block; directions that no longer
  // exist are kept as exact zero columns.
  const std::size_t r = static_cast<std::size_t>(block_size);
  std::size_t cap = std::max(std::min<std::size_t>(n, 3000), 2 * r);
  cap = (cap + r - 1) / r * r;
  return static_cast<int>(cap);
}

void LanczosConfig::validate(std::size_t n) const {
  if (block_size < 1) throw Error("config: block_size must be >= 1");
  if (static_cast<std::size_t>(block_size) > n)
    throw Error("config: block_size exceeds the matrix dimension");
  if (!(tol > 0.0 && tol < 1.0)) throw Error("config: tol must lie in (0, 1)");
  if (resolved_max_dim(n) < 2 * block_size)
    throw Error("config: max_dim must be at least 2 * block_size");
  if (check_every < 1) throw Error("config: check_every must be >= 1");
  if (extra_ritz < 0) throw Error("config: extra_ritz must be >= 0");
  if (bounds_steps < 2) throw Error("config: bounds_steps must be >= 2");
  if (degree && *degree < 1) throw Error("config: degree must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("config: epsilon must lie in (0, 1)");
}

void BlockOperator::apply(const DenseBlock& X, DenseBlock& Y) const {
  if (filter_)
    filter_->apply(*matrix_, X, Y);
  else
    matrix_->spmm_block(X, Y);
}

DenseBlock init_block(std::size_t n, std::size_t r, std::uint64_t seed) {
  if (r > n) throw Error("init_block: more columns than rows");
  if (r == 0) throw Error("init_block: empty block");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  DenseBlock Q(n, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < n; ++i) Q(i, j) = gauss(rng);

  // Twice-iterated Gram-Schmidt column by column.
  for (std::size_t j = 0; j < r; ++j) {
    double* z = Q.col(j);
    cgs_pass(Q, j, z, n, nullptr);
    cgs_pass(Q, j, z, n, nullptr);
    double norm = kernels::nrm2(z, n);
    while (norm < 1e-8 * std::sqrt(static_cast<double>(n))) {
      for (std::size_t i = 0; i < n; ++i) z[i] = gauss(rng);
      cgs_pass(Q, j, z, n, nullptr);
      cgs_pass(Q, j, z, n, nullptr);
      norm = kernels::nrm2(z, n);
    }
    kernels::scal(1.0 / norm, z, n);
  }
  return Q;
}

LanczosFactorization::LanczosFactorization(const BlockOperator& op, DenseBlock start,
                                           std::size_t max_cols)
    : op_(&op),
      n_(start.rows()),
      r_(start.cols()),
      max_cols_(max_cols),
      basis_(start.rows(), max_cols + start.cols()),
      rng_state_(mix_seed(0xD1B54A32D192ED03ULL, max_cols)) {
  if (r_ == 0 || n_ == 0) throw Error("LanczosFactorization: empty start block");
  if (max_cols_ < 2 * r_) throw Error("LanczosFactorization: column budget too small");
  for (std::size_t j = 0; j < r_; ++j)
    std::copy(start.col(j), start.col(j) + n_, basis_.col(j));
  dead_.assign(r_, 0);
}

double LanczosFactorization::ortho_error() const {
  const std::size_t cols = basis_size();
  double worst = 0.0;
  for (std::size_t i = 0; i < cols; ++i) {
    if (dead_[i]) continue;
    for (std::size_t j = i; j < cols; ++j) {
      if (dead_[j]) continue;
      const double g = kernels::dot(basis_.col(i), basis_.col(j), n_);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

int expand(LanczosFactorization& st, int nblocks, ExpandTimes* times) {
  const std::size_t n = st.n_;
  const std::size_t r = st.r_;
  std::mt19937_64 rng(st.rng_state_);
  std::normal_distribution<double> gauss(0.0, 1.0);

  DenseBlock Z(n, r);
  std::vector<double> coeff;

  int added = 0;
  for (int step = 0; step < nblocks; ++step) {
    if (st.basis_size() + r > st.max_cols_) break;
    // Nothing to promote once every pending direction has died.
    bool pending_live = false;
    for (std::size_t j = 0; j < r && !pending_live; ++j)
      pending_live = st.dead_[st.basis_size() + j] == 0;
    if (!pending_live) break;

    // Promote the pending block, then extend the factorization by one block.
    st.k_ += 1;
    const std::size_t cols = st.basis_size();  // includes the promoted block
    const std::size_t newest = cols - r;

    {
      StopWatch mv;
      // Z = op(newest block); the view into the basis is copied first since
      // the operator writes into a caller-provided block.
      DenseBlock B(n, r);
      for (std::size_t j = 0; j < r; ++j)
        std::copy(st.basis_.col(newest + j), st.basis_.col(newest + j) + n, B.col(j));
      st.op_->apply(B, Z);
      if (times) times->mv_s += mv.seconds();
    }

    StopWatch orth;
    for (std::size_t j = 0; j < r; ++j)
      st.op_scale_ = std::max(st.op_scale_, kernels::nrm2(Z.col(j), n));

    // Full reorthogonalization, two classical Gram-Schmidt passes.  The
    // first-pass coefficients against the newest block are the Rayleigh
    // quotient block D_k.
    std::vector<double> Dk(r * r, 0.0);
    coeff.assign(cols, 0.0);
    for (std::size_t j = 0; j < r; ++j) {
      std::fill(coeff.begin(), coeff.end(), 0.0);
      cgs_pass(st.basis_, cols, Z.col(j), n, coeff.data());
      for (std::size_t i = 0; i < r; ++i) Dk[i * r + j] = coeff[newest + i];
      cgs_pass(st.basis_, cols, Z.col(j), n, nullptr);
    }
    double asym = 0.0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j)
        asym = std::max(asym, std::abs(Dk[i * r + j] - Dk[j * r + i]));
    st.max_diag_asym_ = std::max(st.max_diag_asym_, asym);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) {
        const double avg = 0.5 * (Dk[i * r + j] + Dk[j * r + i]);
        Dk[i * r + j] = avg;
        Dk[j * r + i] = avg;
      }
    st.D_.push_back(std::move(Dk));

    // QR of the remainder: the next pending block plus the upper-triangular
    // coupling S_k.  Rank-deficient columns are replaced by fresh random
    // directions (their S diagonal entry is zero); when no new direction
    // exists the column goes dead and the space is exhausted.
    std::vector<double> Sk(r * r, 0.0);
    const double dead_tol = 1e-10 * std::max(st.op_scale_, 1e-300);
    std::size_t live_total = 0;
    for (std::size_t c = 0; c < cols; ++c) live_total += st.dead_[c] ? 0u : 1u;

    for (std::size_t j = 0; j < r; ++j) {
      double* z = Z.col(j);
      double* dest = st.basis_.col(cols + j);
      // Orthogonalize against the pending columns finished so far (the basis
      // components are already removed); coefficients feed S_k.
      coeff.assign(j, 0.0);
      for (std::size_t i = 0; i < j; ++i) {
        const double c = kernels::dot(st.basis_.col(cols + i), z, n);
        kernels::axpy(-c, st.basis_.col(cols + i), z, n);
        coeff[i] += c;
      }
      for (std::size_t i = 0; i < j; ++i) {
        const double c = kernels::dot(st.basis_.col(cols + i), z, n);
        kernels::axpy(-c, st.basis_.col(cols + i), z, n);
        coeff[i] += c;
      }
      for (std::size_t i = 0; i < j; ++i) Sk[i * r + j] = coeff[i];

      const double norm = kernels::nrm2(z, n);
      if (norm > dead_tol) {
        Sk[j * r + j] = norm;
        for (std::size_t i = 0; i < n; ++i) dest[i] = z[i] / norm;
        st.dead_.push_back(0);
        ++live_total;
        continue;
      }

      // Breakdown: replace the direction if the space is not yet spanned.
      st.breakdown_ = true;
      bool replaced = false;
      if (live_total < n) {
        for (int attempt = 0; attempt < 5 && !replaced; ++attempt) {
          for (std::size_t i = 0; i < n; ++i) dest[i] = gauss(rng);
          cgs_pass(st.basis_, cols, dest, n, nullptr);
          for (std::size_t i = 0; i < j; ++i) {
            const double c = kernels::dot(st.basis_.col(cols + i), dest, n);
            kernels::axpy(-c, st.basis_.col(cols + i), dest, n);
          }
          cgs_pass(st.basis_, cols, dest, n, nullptr);
          for (std::size_t i = 0; i < j; ++i) {
            const double c = kernels::dot(st.basis_.col(cols + i), dest, n);
            kernels::axpy(-c, st.basis_.col(cols + i), dest, n);
          }
          const double rn = kernels::nrm2(dest, n);
          if (rn > 1e-4) {
            kernels::scal(1.0 / rn, dest, n);
            replaced = true;
          }
        }
      }
      if (replaced) {
        st.dead_.push_back(0);
        ++live_total;
      } else {
        std::fill(dest, dest + n, 0.0);
        st.dead_.push_back(1);
        st.exhausted_ = true;
      }
    }
    st.S_.push_back(std::move(Sk));
    if (times) times->orth_s += orth.seconds();
    ++added;
  }

  st.rng_state_ = rng();
  return added;
}

SymBandMatrix assemble_projected(const LanczosFactorization& st) {
  const std::size_t r = st.block_size();
  const std::size_t k = st.block_count();
  if (k == 0) throw Error("assemble_projected: empty factorization");
  const std::size_t dim = k * r;
  const std::size_t sb = std::min(r, dim - 1);

  SymBandMatrix T(dim, sb);
  const auto& D = st.diag_blocks();
  const auto& S = st.sub_blocks();
  for (std::size_t blk = 0; blk < k; ++blk) {
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b <= a; ++b) {
        const double sym = 0.5 * (D[blk][a * r + b] + D[blk][b * r + a]);
        T.set(blk * r + a, blk * r + b, sym);
      }
    if (blk + 1 < k) {
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a; b < r; ++b)
          T.set((blk + 1) * r + a, blk * r + b, S[blk][a * r + b]);
    }
  }
  return T;
}

namespace {

double band_max_abs(const SymBandMatrix& T) {
  double m = 0.0;
  for (std::size_t i = 0; i < T.dim(); ++i)
    for (std::size_t j = i > T.semi_bandwidth() ? i - T.semi_bandwidth() : 0; j <= i; ++j)
      m = std::max(m, std::abs(T.get(i, j)));
  return m;
}

}  // namespace

RitzSet check_convergence(const LanczosFactorization& st, double alpha, double beta,
                          double tol, int extra_ritz) {
  const std::size_t r = st.block_size();
  const std::size_t k = st.block_count();
  if (k == 0) throw Error("check_convergence: empty factorization");
  const std::size_t dim = k * r;

  const SymBandMatrix T = assemble_projected(st);
  const double t_scale = band_max_abs(T);
  SymEig eig = sym_band_eig(T);

  RitzSet out;
  out.values.resize(dim);
  out.vectors = DenseBlock(dim, dim);
  out.residual_estimates.assign(dim, 0.0);
  out.wanted.assign(dim, 0);
  out.dead.assign(dim, 0);

  // Descending Ritz values.
  for (std::size_t c = 0; c < dim; ++c) {
    const std::size_t src = dim - 1 - c;
    out.values[c] = eig.values[src];
    std::copy(eig.vectors.col(src), eig.vectors.col(src) + dim, out.vectors.col(c));
  }

  const auto& S_last = st.sub_blocks()[k - 1];
  const auto& dead_cols = st.dead_cols();

  // Filtered-mode classification cut: the filter's value at the (clipped)
  // mapped interval endpoints — evaluating at the raw endpoints would
  // extrapolate the polynomial outside [-1, 1] when the interval sticks out
  // of the spectral bounds.  A rounding margin keeps pairs sitting exactly
  // on the cut wanted; recovery discards out-of-interval ones.
  double tau = 0.0;
  if (st.kind() == OperatorKind::filtered) {
    const ChebyshevFilter* f = st.op().filter();
    tau = std::min(clenshaw(f->coefficients(), f->alpha_mapped()),
                   clenshaw(f->coefficients(), f->beta_mapped())) -
          1e-10 * t_scale;
  }

  for (std::size_t c = 0; c < dim; ++c) {
    const double* w = out.vectors.col(c);

    // || S_k (E_k^T w) ||
    double est = 0.0;
    for (std::size_t a = 0; a < r; ++a) {
      double acc = 0.0;
      for (std::size_t b = a; b < r; ++b) acc += S_last[a * r + b] * w[(k - 1) * r + b];
      est += acc * acc;
    }
    out.residual_estimates[c] = std::sqrt(est);

    double dead_mass = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      if (dead_cols[i]) dead_mass += w[i] * w[i];
    if (dead_mass > 0.5) {
      out.dead[c] = 1;
      continue;
    }

    if (st.kind() == OperatorKind::filtered)
      out.wanted[c] = out.values[c] >= tau ? 1 : 0;
    else
      out.wanted[c] = (out.values[c] >= alpha && out.values[c] <= beta) ? 1 : 0;
  }

  const double threshold = tol * t_scale;
  bool ok = true;
  for (std::size_t c = 0; c < dim && ok; ++c)
    if (out.wanted[c] && out.residual_estimates[c] > threshold) ok = false;

  if (ok) {
    // The nearest unwanted pairs must have settled as well.  In filtered mode
    // nearness means the largest filter values below the cut; in plain mode
    // the smallest distance to the interval.
    std::vector<std::size_t> unwanted;
    for (std::size_t c = 0; c < dim; ++c)
      if (!out.wanted[c] && !out.dead[c]) unwanted.push_back(c);
    if (st.kind() == OperatorKind::plain) {
      std::sort(unwanted.begin(), unwanted.end(), [&](std::size_t a, std::size_t b) {
        const auto dist = [&](std::size_t c) {
          const double v = out.values[c];
          return v < alpha ? alpha - v : (v > beta ? v - beta : 0.0);
        };
        return dist(a) < dist(b);
      });
    }
    // (filtered mode: `unwanted` is already ordered by descending Ritz value)
    const std::size_t need = std::min<std::size_t>(extra_ritz, unwanted.size());
    for (std::size_t t = 0; t < need && ok; ++t)
      if (out.residual_estimates[unwanted[t]] > threshold) ok = false;
  }
  out.converged = ok;
  return out;
}

EigenResult recover_eigenpairs(const LanczosFactorization& st,
                               const SparseSymMatrix& A, double alpha, double beta,
                               const RitzSet& ritz, double norm_estimate) {
  const std::size_t n = st.n();
  const std::size_t dim = st.basis_size();
  const double scale = norm_estimate > 0.0 ? norm_estimate : 1.0;

  // Lift the wanted Ritz vectors.
  std::vector<std::size_t> candidates;
  for (std::size_t c = 0; c < ritz.values.size(); ++c)
    if (ritz.wanted[c] && !ritz.dead[c]) candidates.push_back(c);

  DenseBlock V(n, candidates.size());
  std::vector<std::size_t> kept_src;  // Ritz index per surviving column
  std::size_t w = 0;
  for (const std::size_t c : candidates) {
    const double* wc = ritz.vectors.col(c);
    double* v = V.col(w);
    std::fill(v, v + n, 0.0);
    for (std::size_t j = 0; j < dim; ++j)
      if (wc[j] != 0.0) kernels::axpy(wc[j], st.basis_col(j), v, n);
    const double vnorm = kernels::nrm2(v, n);
    if (vnorm < 0.5) continue;  // lives on dead directions
    kernels::scal(1.0 / vnorm, v, n);
    kept_src.push_back(c);
    ++w;
  }

  struct Pair {
    double lambda;
    double residual;
    std::vector<double> v;
  };
  std::vector<Pair> pairs;

  if (st.kind() == OperatorKind::filtered && w > 0) {
    // Rayleigh quotients of the lifted vectors, computed jointly: project A
    // onto the wanted subspace and rediagonalize.  Eigenvalues of p(A) inside
    // the passband are nearly equal, so the p(A) Ritz vectors may mix the
    // corresponding eigenvectors of A; the one-vector Rayleigh quotient is
    // the w = 1 case of this projection.
    DenseBlock AV(n, w);
    for (std::size_t j = 0; j < w; ++j) A.apply_uncounted(V.col(j), AV.col(j));

    SymBandMatrix B(w, w > 1 ? w - 1 : 0);
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = i; j < w; ++j) {
        const double bij = 0.5 * (kernels::dot(V.col(i), AV.col(j), n) +
                                  kernels::dot(V.col(j), AV.col(i), n));
        B.set(j, i, bij);
      }
    const SymEig small = sym_band_eig(B);

    std::vector<double> av(n);
    for (std::size_t c = 0; c < w; ++c) {
      const double lambda = small.values[c];
      if (lambda < alpha || lambda > beta) continue;
      Pair p;
      p.lambda = lambda;
      p.v.assign(n, 0.0);
      std::fill(av.begin(), av.end(), 0.0);
      for (std::size_t j = 0; j < w; ++j) {
        const double u = small.vectors(j, c);
        kernels::axpy(u, V.col(j), p.v.data(), n);
        kernels::axpy(u, AV.col(j), av.data(), n);
      }
      const double vnorm = kernels::nrm2(p.v.data(), n);
      kernels::scal(1.0 / vnorm, p.v.data(), n);
      kernels::scal(1.0 / vnorm, av.data(), n);
      kernels::axpy(-lambda, p.v.data(), av.data(), n);
      p.residual = kernels::nrm2(av.data(), n) / scale;
      pairs.push_back(std::move(p));
    }
  } else {
    // Plain mode: the Ritz values of T_k are eigenvalue estimates of A
    // already and are used directly.
    std::vector<double> av(n);
    for (std::size_t c = 0; c < w; ++c) {
      const double lambda = ritz.values[kept_src[c]];
      if (lambda < alpha || lambda > beta) continue;
      Pair p;
      p.lambda = lambda;
      p.v.assign(V.col(c), V.col(c) + n);
      A.apply_uncounted(p.v.data(), av.data());
      kernels::axpy(-lambda, p.v.data(), av.data(), n);
      p.residual = kernels::nrm2(av.data(), n) / scale;
      pairs.push_back(std::move(p));
    }
  }

  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return a.lambda < b.lambda; });

  EigenResult out;
  out.eigenvalues.resize(pairs.size());
  out.residuals.resize(pairs.size());
  out.eigenvectors = DenseBlock(n, pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out.eigenvalues[i] = pairs[i].lambda;
    out.residuals[i] = pairs[i].residual;
    std::copy(pairs[i].v.begin(), pairs[i].v.end(), out.eigenvectors.col(i));
  }
  return out;
}

SpectralBounds estimate_spectral_bounds(const SparseSymMatrix& A, int steps,
                                        std::uint64_t seed) {
  const std::size_t n = A.dim();
  if (n < 2) throw Error("estimate_spectral_bounds: matrix dimension must be >= 2");
  if (steps < 2) throw Error("estimate_spectral_bounds: steps must be >= 2");
  const std::size_t s_max = std::min<std::size_t>(steps, n);

  std::mt19937_64 rng(mix_seed(seed, 0xB0u));
  std::normal_distribution<double> gauss(0.0, 1.0);

  DenseBlock Q(n, s_max);
  std::vector<double> w(n), d, e;

  double* q0 = Q.col(0);
  for (std::size_t i = 0; i < n; ++i) q0[i] = gauss(rng);
  kernels::scal(1.0 / kernels::nrm2(q0, n), q0, n);

  double beta_last = 0.0;
  std::size_t s_done = 0;
  double scale = 0.0;
  for (std::size_t s = 0; s < s_max; ++s) {
    A.spmv(Q.col(s), w.data());
    scale = std::max(scale, kernels::nrm2(w.data(), n));
    const double a = kernels::dot(Q.col(s), w.data(), n);
    d.push_back(a);
    cgs_pass(Q, s + 1, w.data(), n, nullptr);
    cgs_pass(Q, s + 1, w.data(), n, nullptr);
    beta_last = kernels::nrm2(w.data(), n);
    s_done = s + 1;
    if (beta_last <= 1e-14 * std::max(scale, 1e-300)) {
      beta_last = 0.0;
      break;
    }
    if (s + 1 < s_max) {
      e.push_back(beta_last);
      double* next = Q.col(s + 1);
      for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / beta_last;
    }
  }

  d.resize(s_done);
  e.resize(s_done > 0 ? s_done - 1 : 0);
  DenseBlock G = DenseBlock::identity(s_done);
  std::vector<double> dd = d, ee = e;
  tridiag_eig(dd, ee, G);

  const double rho_min = std::abs(beta_last * G(s_done - 1, 0));
  const double rho_max = std::abs(beta_last * G(s_done - 1, s_done - 1));
  double lo = dd.front() - rho_min;
  double hi = dd.back() + rho_max;
  const double width = hi - lo;
  if (!(width > 0.0))
    throw Error("estimate_spectral_bounds: spectrum has zero width "
                "(matrix is a multiple of the identity)");
  lo -= 0.005 * width;
  hi += 0.005 * width;
  return SpectralBounds(lo, hi);
}

namespace {

EigenResult run_solve(const SparseSymMatrix& A, double alpha, double beta,
                      const LanczosConfig& cfg, OperatorKind kind) {
  cfg.validate(A.dim());
  if (!(alpha < beta)) throw IntervalError("solve: interval requires alpha < beta");

  const StopWatch total;
  const std::uint64_t mv0 = matvec_count();

  const StopWatch pre;
  const SpectralBounds bounds =
      estimate_spectral_bounds(A, cfg.bounds_steps, cfg.seed);
  const double time_preproc = pre.seconds();
  const std::uint64_t mv1 = matvec_count();

  if (beta < bounds.lambda_min() || alpha > bounds.lambda_max())
    throw IntervalError("solve: interval [" + std::to_string(alpha) + ", " +
                        std::to_string(beta) + "] lies outside the estimated spectrum [" +
                        std::to_string(bounds.lambda_min()) + ", " +
                        std::to_string(bounds.lambda_max()) + "]");

  std::optional<ChebyshevFilter> filter;
  if (kind == OperatorKind::filtered)
    filter = build_filter(bounds, alpha, beta, cfg.degree, cfg.epsilon, cfg.max_degree);
  const BlockOperator op = filter ? BlockOperator::filtered(A, *filter)
                                  : BlockOperator::plain(A);

  const std::size_t r = static_cast<std::size_t>(cfg.block_size);
  const std::size_t max_cols = static_cast<std::size_t>(cfg.resolved_max_dim(A.dim()));
  LanczosFactorization st(op, init_block(A.dim(), r, cfg.seed), max_cols);

  const double norm_est =
      std::max(std::abs(bounds.lambda_min()), std::abs(bounds.lambda_max()));

  ExpandTimes times;
  EigenResult result;
  int checks = 0;
  bool converged = false;

  while (true) {
    if (expand(st, cfg.check_every, &times) == 0) break;
    const RitzSet ritz = check_convergence(st, alpha, beta, cfg.tol, cfg.extra_ritz);
    ++checks;
    if (ritz.converged) {
      result = recover_eigenpairs(st, A, alpha, beta, ritz, norm_est);
      bool residuals_ok = true;
      for (const double res : result.residuals)
        if (!(res <= cfg.tol)) residuals_ok = false;
      if (residuals_ok) {
        converged = true;
        break;
      }
    }
  }

  if (!converged) {
    // Budget or space ran out: report the best pairs of the final state,
    // flagged unconverged.
    const RitzSet ritz = check_convergence(st, alpha, beta, cfg.tol, cfg.extra_ritz);
    result = recover_eigenpairs(st, A, alpha, beta, ritz, norm_est);
  }

  const std::uint64_t mv2 = matvec_count();
  SolveStats& stats = result.stats;
  stats.block_steps = static_cast<int>(st.block_count());
  stats.basis_vectors = static_cast<int>(st.basis_size());
  stats.degree = filter ? filter->degree() : 0;
  stats.mv_bounds = mv1 - mv0;
  stats.mv_iteration = mv2 - mv1;
  stats.mv_total = mv2 - mv0;
  stats.time_preproc_s = time_preproc;
  stats.time_orth_s = times.orth_s;
  stats.time_mv_s = times.mv_s;
  stats.checks = checks;
  stats.converged = converged;
  stats.breakdown_replacements = st.had_breakdown();
  stats.degree_clamped = filter ? filter->degree_clamped() : false;
  stats.norm_estimate = norm_est;
  stats.lambda_min_est = bounds.lambda_min();
  stats.lambda_max_est = bounds.lambda_max();
  if (cfg.collect_diagnostics) stats.ortho_error = st.ortho_error();
  stats.time_total_s = total.seconds();
  return result;
}

}  // namespace

EigenResult filtered_lanczos(const SparseSymMatrix& A, double alpha, double beta,
                             const LanczosConfig& config) {
  return run_solve(A, alpha, beta, config, OperatorKind::filtered);
}

EigenResult plain_lanczos(const SparseSymMatrix& A, double alpha, double beta,
                          const LanczosConfig& config) {
  return run_solve(A, alpha, beta, config, OperatorKind::plain);
}

}  // namespace speig
