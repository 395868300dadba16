#include "revised/kernels.hpp"

#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace revised::kernels {

namespace {

constexpr Ops kScalarOps = {scalar::dot, scalar::axpy, scalar::scale,
                            scalar::add, scalar::sub,  scalar::mul,
                            scalar::sum, scalar::sumsq, scalar::asum};

#if REVISED_HAVE_AVX2
constexpr Ops kAvx2Ops = {avx2::dot, avx2::axpy, avx2::scale, avx2::add, avx2::sub,
                          avx2::mul, avx2::sum,  avx2::sumsq, avx2::asum};
#endif

struct Dispatch {
  const Ops* ops;
  Backend backend;

  Dispatch() {
    backend = avx2_supported() ? Backend::kAvx2 : Backend::kScalar;
    if (const char* env = std::getenv("REVISED_KERNELS")) {
      std::string s(env);
      if (s == "scalar") backend = Backend::kScalar;
      if (s == "avx2" && avx2_supported()) backend = Backend::kAvx2;
    }
    set(backend);
  }

  void set(Backend b) {
    backend = b;
#if REVISED_HAVE_AVX2
    ops = (b == Backend::kAvx2) ? &kAvx2Ops : &kScalarOps;
#else
    ops = &kScalarOps;
#endif
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

bool avx2_supported() {
#if REVISED_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return dispatch().backend; }

bool force_backend(Backend b) {
  if (b == Backend::kAvx2 && !avx2_supported()) return false;
  dispatch().set(b);
  return true;
}

std::string backend_name(Backend b) {
  return b == Backend::kAvx2 ? "avx2" : "scalar";
}

double dot(const double* x, const double* y, std::size_t n) {
  return dispatch().ops->dot(x, y, n);
}
void axpy(double a, const double* x, double* y, std::size_t n) {
  dispatch().ops->axpy(a, x, y, n);
}
void scale(double a, double* x, std::size_t n) { dispatch().ops->scale(a, x, n); }
void add(const double* x, const double* y, double* out, std::size_t n) {
  dispatch().ops->add(x, y, out, n);
}
void sub(const double* x, const double* y, double* out, std::size_t n) {
  dispatch().ops->sub(x, y, out, n);
}
void mul(const double* x, const double* y, double* out, std::size_t n) {
  dispatch().ops->mul(x, y, out, n);
}
double sum(const double* x, std::size_t n) { return dispatch().ops->sum(x, n); }
double sumsq(const double* x, std::size_t n) { return dispatch().ops->sumsq(x, n); }
double asum(const double* x, std::size_t n) { return dispatch().ops->asum(x, n); }

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x,
            double* y, bool accumulate) {
  const Ops* ops = dispatch().ops;
  for (std::size_t r = 0; r < rows; ++r) {
    double v = ops->dot(a + r * cols, x, cols);
    y[r] = accumulate ? y[r] + v : v;
  }
}

void matvec_t(const double* a, std::size_t rows, std::size_t cols, const double* y,
              double* x, bool accumulate) {
  const Ops* ops = dispatch().ops;
  if (!accumulate) {
    for (std::size_t c = 0; c < cols; ++c) x[c] = 0.0;
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (y[r] != 0.0) ops->axpy(y[r], a + r * cols, x, cols);
  }
}

void ger(double alpha, const double* x, std::size_t m, const double* y, std::size_t n,
         double* a) {
  const Ops* ops = dispatch().ops;
  for (std::size_t r = 0; r < m; ++r) {
    double ax = alpha * x[r];
    if (ax != 0.0) ops->axpy(ax, y, a + r * n, n);
  }
}

}  // namespace revised::kernels
