#include "speig/kernels.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace speig::kernels {

namespace detail {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void csr_matvec_scalar(std::size_t n, const std::int64_t* row_ptr,
                       const std::int32_t* col_idx, const double* values,
                       const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::int64_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
      acc += values[p] * x[col_idx[p]];
    y[i] = acc;
  }
}

void clenshaw_combine_scalar(std::size_t n, double s1, double s2, double b,
                             const double* w, const double* y1,
                             const double* y2, const double* x, double* out) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = s1 * w[i] + s2 * y1[i] - y2[i] + b * x[i];
}

#ifdef SPEIG_HAVE_AVX2
double dot_avx2(const double* x, const double* y, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void scal_avx2(double a, double* x, std::size_t n);
void csr_matvec_avx2(std::size_t n, const std::int64_t* row_ptr,
                     const std::int32_t* col_idx, const double* values,
                     const double* x, double* y);
void clenshaw_combine_avx2(std::size_t n, double s1, double s2, double b,
                           const double* w, const double* y1, const double* y2,
                           const double* x, double* out);
#endif

}  // namespace detail

bool avx2_available() {
#if defined(SPEIG_HAVE_AVX2) && defined(__GNUC__)
  static const bool ok =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

namespace {

std::atomic<Backend>& backend_state() {
  static std::atomic<Backend> state{avx2_available() ? Backend::avx2
                                                     : Backend::scalar};
  return state;
}

}  // namespace

Backend active_backend() { return backend_state().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available())
    throw std::invalid_argument("speig: AVX2 backend not available");
  backend_state().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "?";
}

double dot(const double* x, const double* y, std::size_t n) {
#ifdef SPEIG_HAVE_AVX2
  if (active_backend() == Backend::avx2) return detail::dot_avx2(x, y, n);
#endif
  return detail::dot_scalar(x, y, n);
}

double nrm2(const double* x, std::size_t n) { return std::sqrt(dot(x, x, n)); }

void axpy(double a, const double* x, double* y, std::size_t n) {
#ifdef SPEIG_HAVE_AVX2
  if (active_backend() == Backend::avx2) {
    detail::axpy_avx2(a, x, y, n);
    return;
  }
#endif
  detail::axpy_scalar(a, x, y, n);
}

void scal(double a, double* x, std::size_t n) {
#ifdef SPEIG_HAVE_AVX2
  if (active_backend() == Backend::avx2) {
    detail::scal_avx2(a, x, n);
    return;
  }
#endif
  detail::scal_scalar(a, x, n);
}

void csr_matvec(std::size_t n, const std::int64_t* row_ptr,
                const std::int32_t* col_idx, const double* values,
                const double* x, double* y) {
#ifdef SPEIG_HAVE_AVX2
  if (active_backend() == Backend::avx2) {
    detail::csr_matvec_avx2(n, row_ptr, col_idx, values, x, y);
    return;
  }
#endif
  detail::csr_matvec_scalar(n, row_ptr, col_idx, values, x, y);
}

void clenshaw_combine(std::size_t n, double s1, double s2, double b,
                      const double* w, const double* y1, const double* y2,
                      const double* x, double* out) {
#ifdef SPEIG_HAVE_AVX2
  if (active_backend() == Backend::avx2) {
    detail::clenshaw_combine_avx2(n, s1, s2, b, w, y1, y2, x, out);
    return;
  }
#endif
  detail::clenshaw_combine_scalar(n, s1, s2, b, w, y1, y2, x, out);
}

}  // namespace speig::kernels
