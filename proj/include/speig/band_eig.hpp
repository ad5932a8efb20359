#pragma once

#include <cstddef>
#include <vector>

#include "speig/dense_block.hpp"
#include "speig/error.hpp"

namespace speig {

// Symmetric banded matrix: the diagonal plus `semi_bandwidth` sub-diagonals
// are stored; the upper triangle is implied.
class SymBandMatrix {
 public:
  SymBandMatrix(std::size_t dim, std::size_t semi_bandwidth);

  std::size_t dim() const { return dim_; }
  std::size_t semi_bandwidth() const { return sb_; }

  // Entry accessors in full-matrix coordinates; get() returns 0 outside the
  // band, set() requires |i - j| <= semi_bandwidth.
  double get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, double v);

  DenseBlock to_dense() const;

 private:
  std::size_t dim_, sb_;
  // bands_[d][i] = M(i + d, i) for d = 0..sb_
  std::vector<std::vector<double>> bands_;
};

// Orthogonal reduction to tridiagonal form: on return G^T M G = tridiag(d, e)
// with G orthogonal (dim x dim), d the diagonal and e the sub-diagonal
// (e has dim-1 entries).  Uses Givens bulge chasing for narrow bands and
// Householder reflections once the band covers half the matrix.
void tridiagonalize(const SymBandMatrix& M, std::vector<double>& d,
                    std::vector<double>& e, DenseBlock& G);

// Implicit-shift QL on tridiag(d, e) with eigenvector accumulation: columns
// of G are rotated along; on return d holds the eigenvalues in ascending
// order and the columns of G are the matching eigenvectors.
// Throws Error if an eigenvalue fails to converge within 30 sweeps.
void tridiag_eig(std::vector<double>& d, std::vector<double>& e, DenseBlock& G);

struct SymEig {
  std::vector<double> values;  // ascending
  DenseBlock vectors;          // dim x dim orthogonal
};

SymEig sym_band_eig(const SymBandMatrix& M);

}  // namespace speig
