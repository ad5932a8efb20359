// AVX2/FMA kernel variants.  Compiled with -mavx2 -mfma; only invoked after
// the runtime CPU check in kernels.cpp succeeds.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

namespace speig::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  lo = _mm_hadd_pd(lo, lo);
  return _mm_cvtsd_f64(lo);
}

}  // namespace

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double result = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) result += x[i] * y[i];
  return result;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scal_avx2(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void csr_matvec_avx2(std::size_t n, const std::int64_t* row_ptr,
                     const std::int32_t* col_idx, const double* values,
                     const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t begin = row_ptr[i];
    const std::int64_t end = row_ptr[i + 1];
    __m256d acc = _mm256_setzero_pd();
    std::int64_t p = begin;
    for (; p + 4 <= end; p += 4) {
      __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col_idx + p));
      __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(values + p), xv, acc);
    }
    double row = hsum(acc);
    for (; p < end; ++p) row += values[p] * x[col_idx[p]];
    y[i] = row;
  }
}

void clenshaw_combine_avx2(std::size_t n, double s1, double s2, double b,
                           const double* w, const double* y1, const double* y2,
                           const double* x, double* out) {
  const __m256d vs1 = _mm256_set1_pd(s1);
  const __m256d vs2 = _mm256_set1_pd(s2);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_mul_pd(vs1, _mm256_loadu_pd(w + i));
    acc = _mm256_fmadd_pd(vs2, _mm256_loadu_pd(y1 + i), acc);
    acc = _mm256_sub_pd(acc, _mm256_loadu_pd(y2 + i));
    acc = _mm256_fmadd_pd(vb, _mm256_loadu_pd(x + i), acc);
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) out[i] = s1 * w[i] + s2 * y1[i] - y2[i] + b * x[i];
}

}  // namespace speig::kernels::detail
