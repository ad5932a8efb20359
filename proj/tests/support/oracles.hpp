#pragma once

// Test-only oracles, kept independent of the library's production paths:
// a cyclic Jacobi eigensolver, tanh-sinh quadrature for the filter
// coefficient integrals, a forward-recurrence Chebyshev evaluator, analytic
// 2-D Laplacian spectra, and deterministic random problem generators.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "speig/band_eig.hpp"
#include "speig/dense_block.hpp"
#include "speig/sparse.hpp"

namespace speig::test {

struct DenseEig {
  std::vector<double> values;  // ascending
  DenseBlock vectors;          // empty unless requested
};

// Cyclic Jacobi rotations on a dense symmetric matrix.
DenseEig jacobi_eig(DenseBlock A, bool want_vectors);

// Direct Chebyshev sum via the three-term forward recurrence.
double chebyshev_forward_sum(std::span<const double> coeffs, double t);

// Chebyshev coefficients of the indicator of [a, b] computed by tanh-sinh
// quadrature of the weighted inner-product integrals (handles the endpoint
// singularities of the weight).
std::vector<double> indicator_coefficients_quadrature(double a, double b, int max_i);

// 5-point stencil Laplacian on a grid x grid mesh with Dirichlet boundary.
SparseSymMatrix laplacian2d(std::size_t grid);
std::vector<double> laplacian2d_eigenvalues(std::size_t grid);  // ascending

SparseSymMatrix diag_matrix(const std::vector<double>& values);

// Symmetric sparse matrix with ~density fill, entries in [-1, 1].
SparseSymMatrix random_sparse_sym(std::size_t n, double density, std::uint64_t seed);

SymBandMatrix random_band(std::size_t dim, std::size_t semi_bandwidth,
                          std::uint64_t seed);

DenseBlock to_dense(const SparseSymMatrix& A);

// Intervals [lo, hi] whose endpoints sit on midpoints of comfortably wide
// spectral gaps (>= min_gap from every eigenvalue) and which contain at
// least one eigenvalue each.  Intervals holding an eigenvalue of
// multiplicity above max_mult are skipped (block Lanczos with block size r
// resolves multiplicities up to r).
std::vector<std::pair<double, double>> pick_intervals(const std::vector<double>& eigs,
                                                      int count,
                                                      double min_gap = 1e-4,
                                                      int max_mult = 1 << 30);

// Unique temporary directory, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string write_file(const std::string& path, const std::string& content);

}  // namespace speig::test
