#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "speig/dense_block.hpp"
#include "speig/error.hpp"

namespace speig {

struct Triplet {
  std::int64_t row;
  std::int64_t col;
  double value;
};

// Real symmetric sparse matrix in CSR form.  The full square pattern is
// stored (both triangles); construction enforces exact numerical symmetry.
// Immutable after construction and safe to share between solves.
class SparseSymMatrix {
 public:
  // `entries` describe the full square pattern.  Duplicate coordinates are
  // summed; the summed matrix must be exactly symmetric (entry-for-entry),
  // otherwise an Error is thrown.
  static SparseSymMatrix from_entries(std::size_t n, std::vector<Triplet> entries);

  std::size_t dim() const { return n_; }
  std::size_t nnz() const { return static_cast<std::size_t>(row_ptr_.back()); }

  const std::vector<std::int64_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::int32_t>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  // Largest entry magnitude (0 for an empty matrix).
  double max_abs() const { return max_abs_; }

  // y = A*x; bumps the global matvec counter by 1.
  void spmv(const double* x, double* y) const;
  std::vector<double> spmv(const std::vector<double>& x) const;

  // Y = A*X column by column; bumps the matvec counter by X.cols().
  // Each column is bit-identical to the corresponding spmv.
  void spmm_block(const DenseBlock& X, DenseBlock& Y) const;
  DenseBlock spmm_block(const DenseBlock& X) const;

  // Same product without touching the matvec counter.  Used for residual
  // verification and Rayleigh quotients, which the solve statistics do not
  // charge as iteration matvecs.
  void apply_uncounted(const double* x, double* y) const;

 private:
  SparseSymMatrix() = default;

  std::size_t n_ = 0;
  std::vector<std::int64_t> row_ptr_{0};
  std::vector<std::int32_t> col_idx_;
  std::vector<double> values_;
  double max_abs_ = 0.0;
};

// Reads a Matrix Market coordinate file (real/integer/pattern field,
// general or symmetric).  Symmetric files are expanded by mirroring;
// general files must be numerically symmetric within
// 1e-12 * max|A| and are symmetrized exactly afterwards.  Duplicates are
// summed, pattern entries get value 1.0, explicit zeros are kept.
SparseSymMatrix load_matrix_market(const std::string& path);

// Writes coordinate format with `symmetric` header (lower triangle).
// Values round-trip exactly: load(save(A)) reproduces identical CSR arrays.
void save_matrix_market(const SparseSymMatrix& A, const std::string& path);

// Writes a dense block in Matrix Market array format (real general).
void save_dense_matrix_market(const DenseBlock& X, const std::string& path);

// Global matvec counter.  Incremented by spmv/spmm_block; solver statistics
// are computed from snapshots of this counter.
std::uint64_t matvec_count();
void reset_matvec_count();

}  // namespace speig
