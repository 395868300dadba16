#pragma once

#include <cstddef>

// Internal: per-backend entry points. kernels.cpp wires these into the
// dispatch table.

namespace revised::kernels {

struct Ops {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  void (*add)(const double*, const double*, double*, std::size_t);
  void (*sub)(const double*, const double*, double*, std::size_t);
  void (*mul)(const double*, const double*, double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*sumsq)(const double*, std::size_t);
  double (*asum)(const double*, std::size_t);
};

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
void add(const double* x, const double* y, double* out, std::size_t n);
void sub(const double* x, const double* y, double* out, std::size_t n);
void mul(const double* x, const double* y, double* out, std::size_t n);
double sum(const double* x, std::size_t n);
double sumsq(const double* x, std::size_t n);
double asum(const double* x, std::size_t n);
}  // namespace scalar

#if REVISED_HAVE_AVX2
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
void add(const double* x, const double* y, double* out, std::size_t n);
void sub(const double* x, const double* y, double* out, std::size_t n);
void mul(const double* x, const double* y, double* out, std::size_t n);
double sum(const double* x, std::size_t n);
double sumsq(const double* x, std::size_t n);
double asum(const double* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace revised::kernels
