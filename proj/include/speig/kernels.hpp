#pragma once

#include <cstddef>
#include <cstdint>

// Low-level arithmetic kernels used by the solver inner loops.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime.  The active backend can be pinned with
// set_backend(); for a fixed backend all kernels are bitwise deterministic
// (fixed evaluation order, no threading).

namespace speig::kernels {

enum class Backend { scalar, avx2 };

// True when the CPU (and this build) can run the AVX2 variants.
bool avx2_available();

Backend active_backend();

// Pin the backend.  Throws std::invalid_argument if the requested backend is
// not available on this machine/build.
void set_backend(Backend b);

const char* backend_name(Backend b);

// sum_i x[i]*y[i]
double dot(const double* x, const double* y, std::size_t n);

// Euclidean norm.
double nrm2(const double* x, std::size_t n);

// y += a*x
void axpy(double a, const double* x, double* y, std::size_t n);

// x *= a
void scal(double a, double* x, std::size_t n);

// y = A*x for CSR A with n rows.
void csr_matvec(std::size_t n, const std::int64_t* row_ptr,
                const std::int32_t* col_idx, const double* values,
                const double* x, double* y);

// out[i] = s1*w[i] + s2*y1[i] - y2[i] + b*x[i].  `out` may alias `y2`.
// This is the fused update of the block Clenshaw recurrence.
void clenshaw_combine(std::size_t n, double s1, double s2, double b,
                      const double* w, const double* y1, const double* y2,
                      const double* x, double* out);

}  // namespace speig::kernels
