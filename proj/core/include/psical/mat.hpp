#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "psical/error.hpp"

namespace psical {

// Small dense real d x d matrix, row-major. Used for quantization parameters
// and shear couplings; d is the spatial dimension, so these stay tiny.
class Mat {
 public:
  Mat() = default;
  explicit Mat(std::size_t d) : d_(d), a_(d * d, 0.0) {}
  Mat(std::size_t d, std::vector<double> entries) : d_(d), a_(std::move(entries)) {
    require(a_.size() == d_ * d_, ErrorCode::Shape, "Mat: entry count != d*d");
  }

  static Mat identity(std::size_t d, double scale = 1.0) {
    Mat m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = scale;
    return m;
  }
  static Mat zero(std::size_t d) { return Mat(d); }

  std::size_t dim() const { return d_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }

  bool is_zero() const {
    for (double v : a_)
      if (v != 0.0) return false;
    return true;
  }

  // y = M x
  void apply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < d_; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d_; ++j) acc += a_[i * d_ + j] * x[j];
      y[i] = acc;
    }
  }

  Mat operator+(const Mat& o) const {
    Mat r(d_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }
  Mat operator-() const {
    Mat r(d_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
  }
  Mat operator-(const Mat& o) const { return *this + (-o); }

 private:
  std::size_t d_ = 0;
  std::vector<double> a_;
};

}  // namespace psical
