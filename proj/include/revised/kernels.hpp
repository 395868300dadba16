#pragma once

#include <cstddef>
#include <string>

namespace revised::kernels {

// Flat double-precision primitives behind the neural substrate. Two
// implementations exist: a scalar reference and an AVX2 variant. The active
// backend is chosen once at startup from CPU capabilities and can be
// overridden with the REVISED_KERNELS environment variable ("scalar",
// "avx2") or force_backend(). Both variants are equivalence-tested against
// each other; they may differ in the last bits because summation order
// differs, so results are reproducible per platform+backend, not across
// backends.

enum class Backend { kScalar, kAvx2 };

Backend active_backend();
// Returns false if the requested backend is unavailable on this CPU.
bool force_backend(Backend b);
bool avx2_supported();
std::string backend_name(Backend b);

// sum_i x[i] * y[i]
double dot(const double* x, const double* y, std::size_t n);
// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);
// x *= a
void scale(double a, double* x, std::size_t n);
// out = x + y
void add(const double* x, const double* y, double* out, std::size_t n);
// out = x - y
void sub(const double* x, const double* y, double* out, std::size_t n);
// out = x .* y
void mul(const double* x, const double* y, double* out, std::size_t n);
// sum_i x[i]
double sum(const double* x, std::size_t n);
// sum_i x[i]^2
double sumsq(const double* x, std::size_t n);
// sum_i |x[i]|
double asum(const double* x, std::size_t n);

// Composites built on the dispatched primitives.

// y (+)= A x, with A row-major (rows x cols), x of length cols.
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x,
            double* y, bool accumulate);
// x (+)= A^T y, with A row-major (rows x cols), y of length rows.
void matvec_t(const double* a, std::size_t rows, std::size_t cols, const double* y,
              double* x, bool accumulate);
// A += alpha * x y^T, with A row-major (m x n).
void ger(double alpha, const double* x, std::size_t m, const double* y, std::size_t n,
         double* a);

}  // namespace revised::kernels
