#include "speig/sparse.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "speig/kernels.hpp"

namespace speig {

namespace {

std::atomic<std::uint64_t> g_matvec_count{0};

}  // namespace

std::uint64_t matvec_count() { return g_matvec_count.load(std::memory_order_relaxed); }

void reset_matvec_count() { g_matvec_count.store(0, std::memory_order_relaxed); }

SparseSymMatrix SparseSymMatrix::from_entries(std::size_t n,
                                              std::vector<Triplet> entries) {
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.col < 0 || t.row >= static_cast<std::int64_t>(n) ||
        t.col >= static_cast<std::int64_t>(n))
      throw Error("matrix entry index out of range");
    if (!std::isfinite(t.value)) throw Error("matrix entry is not finite");
  }

  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  // Sum duplicate coordinates in place.
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (out > 0 && entries[out - 1].row == entries[i].row &&
        entries[out - 1].col == entries[i].col) {
      entries[out - 1].value += entries[i].value;
    } else {
      entries[out++] = entries[i];
    }
  }
  entries.resize(out);

  SparseSymMatrix A;
  A.n_ = n;
  A.row_ptr_.assign(n + 1, 0);
  A.col_idx_.resize(entries.size());
  A.values_.resize(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    A.row_ptr_[entries[i].row + 1]++;
    A.col_idx_[i] = static_cast<std::int32_t>(entries[i].col);
    A.values_[i] = entries[i].value;
    A.max_abs_ = std::max(A.max_abs_, std::abs(entries[i].value));
  }
  for (std::size_t i = 0; i < n; ++i) A.row_ptr_[i + 1] += A.row_ptr_[i];

  // Exact symmetry of the stored pattern and values.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::int64_t p = A.row_ptr_[i]; p < A.row_ptr_[i + 1]; ++p) {
      const std::size_t j = static_cast<std::size_t>(A.col_idx_[p]);
      if (j <= i) continue;
      const std::int32_t* begin = A.col_idx_.data() + A.row_ptr_[j];
      const std::int32_t* end = A.col_idx_.data() + A.row_ptr_[j + 1];
      const std::int32_t* hit =
          std::lower_bound(begin, end, static_cast<std::int32_t>(i));
      if (hit == end || *hit != static_cast<std::int32_t>(i))
        throw Error("matrix is structurally asymmetric at (" + std::to_string(i) +
                    "," + std::to_string(j) + ")");
      const double vij = A.values_[p];
      const double vji = A.values_[A.row_ptr_[j] + (hit - begin)];
      if (vij != vji)
        throw Error("matrix is numerically asymmetric at (" + std::to_string(i) +
                    "," + std::to_string(j) + ")");
    }
  }
  return A;
}

void SparseSymMatrix::apply_uncounted(const double* x, double* y) const {
  kernels::csr_matvec(n_, row_ptr_.data(), col_idx_.data(), values_.data(), x, y);
}

void SparseSymMatrix::spmv(const double* x, double* y) const {
  apply_uncounted(x, y);
  g_matvec_count.fetch_add(1, std::memory_order_relaxed);
}

std::vector<double> SparseSymMatrix::spmv(const std::vector<double>& x) const {
  if (x.size() != n_)
    throw DimensionError("spmv: vector length " + std::to_string(x.size()) +
                         " does not match matrix dimension " + std::to_string(n_));
  std::vector<double> y(n_);
  spmv(x.data(), y.data());
  return y;
}

void SparseSymMatrix::spmm_block(const DenseBlock& X, DenseBlock& Y) const {
  if (X.rows() != n_)
    throw DimensionError("spmm_block: block has " + std::to_string(X.rows()) +
                         " rows, matrix dimension is " + std::to_string(n_));
  if (Y.rows() != X.rows() || Y.cols() != X.cols()) Y = DenseBlock(X.rows(), X.cols());
  for (std::size_t j = 0; j < X.cols(); ++j) spmv(X.col(j), Y.col(j));
}

DenseBlock SparseSymMatrix::spmm_block(const DenseBlock& X) const {
  DenseBlock Y(X.rows(), X.cols());
  spmm_block(X, Y);
  return Y;
}

namespace {

struct MmHeader {
  enum class Field { real, integer, pattern } field = Field::real;
  bool symmetric = false;
};

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& msg) {
  throw ParseError(path + ":" + std::to_string(line) + ": " + msg);
}

MmHeader parse_banner(const std::string& path, const std::string& banner) {
  std::istringstream ss(banner);
  std::string tag, object, format, field, symmetry;
  ss >> tag >> object >> format >> field >> symmetry;
  if (lower(tag) != "%%matrixmarket")
    fail(path, 1, "not a Matrix Market file (missing %%MatrixMarket banner)");
  if (lower(object) != "matrix") fail(path, 1, "unsupported object '" + object + "'");
  if (lower(format) != "coordinate")
    fail(path, 1, "unsupported format '" + format + "' (expected coordinate)");

  MmHeader h;
  const std::string f = lower(field);
  if (f == "real") h.field = MmHeader::Field::real;
  else if (f == "integer") h.field = MmHeader::Field::integer;
  else if (f == "pattern") h.field = MmHeader::Field::pattern;
  else if (f == "complex") fail(path, 1, "complex matrices are not supported");
  else fail(path, 1, "unsupported field '" + field + "'");

  const std::string s = lower(symmetry);
  if (s == "symmetric") h.symmetric = true;
  else if (s == "general") h.symmetric = false;
  else if (s == "skew-symmetric") fail(path, 1, "skew-symmetric matrices are not supported");
  else if (s == "hermitian") fail(path, 1, "hermitian matrices are not supported");
  else fail(path, 1, "unsupported symmetry '" + symmetry + "'");
  return h;
}

bool blank_or_comment(const std::string& s) {
  for (char c : s) {
    if (c == '%') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

SparseSymMatrix load_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");

  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  ++lineno;
  const MmHeader header = parse_banner(path, line);

  std::int64_t rows = -1, cols = -1, declared = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line)) continue;
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> declared))
      fail(path, lineno, "malformed size line (expected: rows cols nnz)");
    break;
  }
  if (rows < 0) throw ParseError(path + ": missing size line");
  if (rows != cols)
    throw ParseError(path + ": matrix is not square (" + std::to_string(rows) +
                     "x" + std::to_string(cols) + ")");
  if (declared < 0) throw ParseError(path + ": negative entry count");

  std::vector<Triplet> entries;
  entries.reserve(header.symmetric ? 2 * declared : declared);
  std::int64_t seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line)) continue;
    if (seen == declared) fail(path, lineno, "more entries than declared in size line");

    const char* p = line.c_str();
    char* end = nullptr;
    const std::int64_t i = std::strtoll(p, &end, 10);
    if (end == p) fail(path, lineno, "malformed entry (row index)");
    p = end;
    const std::int64_t j = std::strtoll(p, &end, 10);
    if (end == p) fail(path, lineno, "malformed entry (column index)");
    p = end;
    double v = 1.0;
    if (header.field != MmHeader::Field::pattern) {
      v = std::strtod(p, &end);
      if (end == p) fail(path, lineno, "malformed entry (value)");
      p = end;
    }
    while (*p != '\0' && std::isspace(static_cast<unsigned char>(*p))) ++p;
    if (*p != '\0') fail(path, lineno, "trailing characters after entry");

    if (i < 1 || i > rows || j < 1 || j > cols)
      fail(path, lineno, "entry index out of range");
    if (header.symmetric && i < j)
      fail(path, lineno, "upper-triangle entry in symmetric file");
    if (!std::isfinite(v)) fail(path, lineno, "entry value is not finite");

    entries.push_back({i - 1, j - 1, v});
    if (header.symmetric && i != j) entries.push_back({j - 1, i - 1, v});
    ++seen;
  }
  if (seen != declared)
    throw ParseError(path + ": file ends after " + std::to_string(seen) +
                     " of " + std::to_string(declared) + " entries");

  if (!header.symmetric) {
    // Sum duplicates, then check numerical symmetry within tolerance and
    // symmetrize exactly (the CSR invariant requires exact equality).
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::size_t out = 0;
    double max_abs = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (out > 0 && entries[out - 1].row == entries[i].row &&
          entries[out - 1].col == entries[i].col)
        entries[out - 1].value += entries[i].value;
      else
        entries[out++] = entries[i];
    }
    entries.resize(out);
    for (const Triplet& t : entries) max_abs = std::max(max_abs, std::abs(t.value));

    auto find = [&entries](std::int64_t r, std::int64_t c) -> Triplet* {
      Triplet key{r, c, 0.0};
      auto it = std::lower_bound(entries.begin(), entries.end(), key,
                                 [](const Triplet& a, const Triplet& b) {
                                   return a.row != b.row ? a.row < b.row : a.col < b.col;
                                 });
      if (it == entries.end() || it->row != r || it->col != c) return nullptr;
      return &*it;
    };

    const double tol = 1e-12 * max_abs;
    for (Triplet& t : entries) {
      if (t.row >= t.col) continue;
      Triplet* m = find(t.col, t.row);
      const double other = m ? m->value : 0.0;
      if (std::abs(t.value - other) > tol)
        throw Error(path + ": general matrix is not symmetric at (" +
                    std::to_string(t.row + 1) + "," + std::to_string(t.col + 1) +
                    "): " + std::to_string(t.value) + " vs " + std::to_string(other));
      if (!m)
        throw Error(path + ": general matrix is structurally asymmetric at (" +
                    std::to_string(t.row + 1) + "," + std::to_string(t.col + 1) + ")");
      const double avg = 0.5 * (t.value + m->value);
      t.value = avg;
      m->value = avg;
    }
    // Mirror-check the other triangle for unpaired entries.
    for (const Triplet& t : entries) {
      if (t.row <= t.col) continue;
      if (!find(t.col, t.row))
        throw Error(path + ": general matrix is structurally asymmetric at (" +
                    std::to_string(t.row + 1) + "," + std::to_string(t.col + 1) + ")");
    }
  }

  return SparseSymMatrix::from_entries(static_cast<std::size_t>(rows),
                                       std::move(entries));
}

void save_matrix_market(const SparseSymMatrix& A, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  const auto& rp = A.row_ptr();
  const auto& ci = A.col_idx();
  const auto& v = A.values();

  std::int64_t lower = 0;
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::int64_t p = rp[i]; p < rp[i + 1]; ++p)
      if (static_cast<std::size_t>(ci[p]) <= i) ++lower;

  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << A.dim() << " " << A.dim() << " " << lower << "\n";
  char buf[64];
  for (std::size_t i = 0; i < A.dim(); ++i) {
    for (std::int64_t p = rp[i]; p < rp[i + 1]; ++p) {
      if (static_cast<std::size_t>(ci[p]) > i) continue;
      std::snprintf(buf, sizeof(buf), "%zu %d %.17g\n", i + 1, ci[p] + 1, v[p]);
      out << buf;
    }
  }
  if (!out) throw Error("write to '" + path + "' failed");
}

void save_dense_matrix_market(const DenseBlock& X, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "%%MatrixMarket matrix array real general\n";
  out << X.rows() << " " << X.cols() << "\n";
  char buf[64];
  for (std::size_t j = 0; j < X.cols(); ++j) {
    for (std::size_t i = 0; i < X.rows(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g\n", X(i, j));
      out << buf;
    }
  }
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace speig
