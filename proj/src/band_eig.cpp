#include "speig/band_eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace speig {

SymBandMatrix::SymBandMatrix(std::size_t dim, std::size_t semi_bandwidth)
    : dim_(dim), sb_(semi_bandwidth) {
  if (dim == 0) throw Error("SymBandMatrix: dimension must be positive");
  if (sb_ >= dim_ && dim_ > 1)
    throw Error("SymBandMatrix: semi-bandwidth must be smaller than the dimension");
  if (dim_ == 1) sb_ = 0;
  bands_.resize(sb_ + 1);
  for (std::size_t d = 0; d <= sb_; ++d) bands_[d].assign(dim_ - d, 0.0);
}

double SymBandMatrix::get(std::size_t i, std::size_t j) const {
  const std::size_t lo = std::min(i, j);
  const std::size_t hi = std::max(i, j);
  const std::size_t d = hi - lo;
  if (d > sb_) return 0.0;
  return bands_[d][lo];
}

void SymBandMatrix::set(std::size_t i, std::size_t j, double v) {
  const std::size_t lo = std::min(i, j);
  const std::size_t hi = std::max(i, j);
  const std::size_t d = hi - lo;
  if (d > sb_) throw Error("SymBandMatrix::set outside the band");
  bands_[d][lo] = v;
}

DenseBlock SymBandMatrix::to_dense() const {
  DenseBlock A(dim_, dim_);
  for (std::size_t d = 0; d <= sb_; ++d)
    for (std::size_t i = 0; i + d < dim_; ++i) {
      A(i + d, i) = bands_[d][i];
      A(i, i + d) = bands_[d][i];
    }
  return A;
}

namespace {

// Two-sided Givens rotation in the (p, p+1) plane applied to the symmetric
// working matrix A, touching only columns/rows within `half` of the plane,
// plus accumulation into the columns of G.
void apply_plane_rotation(DenseBlock& A, DenseBlock& G, std::size_t p, double c,
                          double s, std::size_t half) {
  const std::size_t n = A.rows();
  const std::size_t q = p + 1;
  const std::size_t lo = p > half ? p - half : 0;
  const std::size_t hi = std::min(n - 1, q + half);

  for (std::size_t j = lo; j <= hi; ++j) {
    const double ap = A(p, j);
    const double aq = A(q, j);
    A(p, j) = c * ap + s * aq;
    A(q, j) = -s * ap + c * aq;
  }
  for (std::size_t i = lo; i <= hi; ++i) {
    const double ap = A(i, p);
    const double aq = A(i, q);
    A(i, p) = c * ap + s * aq;
    A(i, q) = -s * ap + c * aq;
  }
  double* gp = G.col(p);
  double* gq = G.col(q);
  for (std::size_t i = 0; i < n; ++i) {
    const double vp = gp[i];
    const double vq = gq[i];
    gp[i] = c * vp + s * vq;
    gq[i] = -s * vp + c * vq;
  }
}

// Band reduction by bulge chasing: eliminate everything below the first
// sub-diagonal column by column; each rotation pushes a single bulge b+1
// places down, which is chased off the bottom.
void reduce_band_givens(const SymBandMatrix& M, std::vector<double>& d,
                        std::vector<double>& e, DenseBlock& G) {
  const std::size_t n = M.dim();
  const std::size_t b = M.semi_bandwidth();
  DenseBlock A = M.to_dense();
  G = DenseBlock::identity(n);
  const std::size_t half = b + 2;

  for (std::size_t j = 0; j + 2 < n; ++j) {
    for (std::size_t i = std::min(j + b, n - 1); i >= j + 2; --i) {
      std::size_t jj = j;
      std::size_t ii = i;
      while (true) {
        const double head = A(ii - 1, jj);
        const double tail = A(ii, jj);
        if (tail != 0.0) {
          const double r = std::hypot(head, tail);
          apply_plane_rotation(A, G, ii - 1, head / r, tail / r, half);
          A(ii, jj) = 0.0;
          A(jj, ii) = 0.0;
        }
        if (ii + b >= n) break;
        jj = ii - 1;
        ii = ii + b;
      }
    }
  }

  d.resize(n);
  e.assign(n > 1 ? n - 1 : 0, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = A(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = A(i + 1, i);
}

// Householder reduction of the dense embedding; preferred once the band
// covers at least half of the matrix.
void reduce_dense_householder(const SymBandMatrix& M, std::vector<double>& d,
                              std::vector<double>& e, DenseBlock& G) {
  const std::size_t n = M.dim();
  DenseBlock A = M.to_dense();
  G = DenseBlock::identity(n);

  std::vector<double> v(n), p(n), w(n), gv(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t L = n - k - 1;  // length of the column below the diagonal
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
      v[i] = A(k + 1 + i, k);
      norm_sq += v[i] * v[i];
    }
    double below_sq = norm_sq - v[0] * v[0];
    if (below_sq <= 0.0) continue;  // already tridiagonal in this column

    const double norm = std::sqrt(norm_sq);
    const double alpha = v[0] >= 0.0 ? -norm : norm;
    v[0] -= alpha;
    double vnorm = 0.0;
    for (std::size_t i = 0; i < L; ++i) vnorm += v[i] * v[i];
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) continue;
    for (std::size_t i = 0; i < L; ++i) v[i] /= vnorm;

    // p = A22 v ; w = p - (v^T p) v ; A22 -= 2 v w^T + 2 w v^T
    for (std::size_t i = 0; i < L; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < L; ++j) acc += A(k + 1 + i, k + 1 + j) * v[j];
      p[i] = acc;
    }
    double beta = 0.0;
    for (std::size_t i = 0; i < L; ++i) beta += v[i] * p[i];
    for (std::size_t i = 0; i < L; ++i) w[i] = p[i] - beta * v[i];
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = 0; j < L; ++j)
        A(k + 1 + i, k + 1 + j) -= 2.0 * (v[i] * w[j] + w[i] * v[j]);

    A(k + 1, k) = alpha;
    A(k, k + 1) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) {
      A(i, k) = 0.0;
      A(k, i) = 0.0;
    }

    // G <- G * diag(I, H)
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < L; ++j) acc += G(i, k + 1 + j) * v[j];
      gv[i] = acc;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < L; ++j)
        G(i, k + 1 + j) -= 2.0 * gv[i] * v[j];
  }

  d.resize(n);
  e.assign(n > 1 ? n - 1 : 0, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = A(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = A(i + 1, i);
}

}  // namespace

void tridiagonalize(const SymBandMatrix& M, std::vector<double>& d,
                    std::vector<double>& e, DenseBlock& G) {
  const std::size_t n = M.dim();
  const std::size_t b = M.semi_bandwidth();

  if (b <= 1 || n <= 2) {
    G = DenseBlock::identity(n);
    d.resize(n);
    e.assign(n > 1 ? n - 1 : 0, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i] = M.get(i, i);
    for (std::size_t i = 0; i + 1 < n && b >= 1; ++i) e[i] = M.get(i + 1, i);
    return;
  }
  if (b >= n / 2) {
    reduce_dense_householder(M, d, e, G);
    return;
  }
  reduce_band_givens(M, d, e, G);
}

void tridiag_eig(std::vector<double>& d, std::vector<double>& e, DenseBlock& G) {
  const std::size_t n = d.size();
  if (n == 0) return;
  if (G.rows() == 0) G = DenseBlock::identity(n);
  if (G.cols() != n) throw Error("tridiag_eig: accumulator has wrong shape");

  std::vector<double> f(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) f[i] = e[i];
  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t grows = G.rows();

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(f[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 30)
          throw Error("tridiag_eig: eigenvalue " + std::to_string(l) +
                      " failed to converge after 30 sweeps");
        double g = (d[l + 1] - d[l]) / (2.0 * f[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + f[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t i1 = m; i1-- > l;) {
          double ff = s * f[i1];
          const double bb = c * f[i1];
          r = std::hypot(ff, g);
          f[i1 + 1] = r;
          if (r == 0.0) {
            d[i1 + 1] -= p;
            f[m] = 0.0;
            underflow = true;
            break;
          }
          s = ff / r;
          c = g / r;
          g = d[i1 + 1] - p;
          r = (d[i1] - g) * s + 2.0 * c * bb;
          p = s * r;
          d[i1 + 1] = g + p;
          g = c * r - bb;
          double* gc0 = G.col(i1);
          double* gc1 = G.col(i1 + 1);
          for (std::size_t row = 0; row < grows; ++row) {
            ff = gc1[row];
            gc1[row] = s * gc0[row] + c * ff;
            gc0[row] = c * gc0[row] - s * ff;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        f[l] = g;
        f[m] = 0.0;
      }
    } while (m != l);
  }

  // Ascending order, carrying eigenvector columns along.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  std::vector<double> ds(n);
  DenseBlock Gs(G.rows(), n);
  for (std::size_t j = 0; j < n; ++j) {
    ds[j] = d[perm[j]];
    std::copy(G.col(perm[j]), G.col(perm[j]) + G.rows(), Gs.col(j));
  }
  d = std::move(ds);
  G = std::move(Gs);
  e.assign(n > 1 ? n - 1 : 0, 0.0);
}

SymEig sym_band_eig(const SymBandMatrix& M) {
  std::vector<double> d, e;
  DenseBlock G;
  tridiagonalize(M, d, e, G);
  tridiag_eig(d, e, G);
  return SymEig{std::move(d), std::move(G)};
}

}  // namespace speig
