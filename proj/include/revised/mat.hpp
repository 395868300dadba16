#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <vector>

namespace revised {

// Dense row-major matrix of doubles. Deliberately minimal: the neural code
// drives all arithmetic through the kernels layer, this is just storage.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> d;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), d(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) {
    assert(r < rows && c < cols);
    return d[r * cols + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    assert(r < rows && c < cols);
    return d[r * cols + c];
  }

  double* row(std::size_t r) { return d.data() + r * cols; }
  const double* row(std::size_t r) const { return d.data() + r * cols; }

  std::size_t size() const { return d.size(); }
  void zero() { std::fill(d.begin(), d.end(), 0.0); }

  bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows == b.rows && a.cols == b.cols && a.d == b.d;
  }
};

using Vec = std::vector<double>;

}  // namespace revised
