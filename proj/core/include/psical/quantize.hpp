#pragma once

#include <functional>

#include "psical/field.hpp"
#include "psical/mat.hpp"

namespace psical {

// Quantization parameter: a real d x d matrix A. A = t*I gives the classical
// one-parameter family; t = 0 Kohn-Nirenberg, t = 1/2 Weyl, t = 1 adjoint
// ordering.
struct QuantizationMatrix {
  Mat A;

  static QuantizationMatrix kn(std::size_t d) { return {Mat::zero(d)}; }
  static QuantizationMatrix weyl(std::size_t d) { return {Mat::identity(d, 0.5)}; }
  static QuantizationMatrix one(std::size_t d) { return {Mat::identity(d, 1.0)}; }
  static QuantizationMatrix scaled(std::size_t d, double t) {
    return {Mat::identity(d, t)};
  }
  static QuantizationMatrix general(Mat m) { return {std::move(m)}; }
  std::size_t dim() const { return A.dim(); }
};

// Discretized integral kernel on (x, y) axes. The pairing constant is
// absorbed into the stored values, pinned by op(1) = identity: applying the
// operator is literally sum_y K(x, y) f(y) dy.
struct OperatorKernel {
  Field values;
  QuantizationMatrix quant;

  Grid target_grid() const;  // x block
  Grid source_grid() const;  // y block
};

// Dense matrix form with the quadrature weight dy baked in: apply == M * f.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  OperatorMatrix(Grid target, Grid source, std::vector<cplx> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Grid& target_grid() const { return target_; }
  const Grid& source_grid() const { return source_; }
  std::span<const cplx> entries() const { return m_; }
  cplx at(std::size_t i, std::size_t j) const { return m_[i * cols_ + j]; }
  cplx& at(std::size_t i, std::size_t j) { return m_[i * cols_ + j]; }

  Field apply(const Field& f) const;
  OperatorMatrix multiply(const OperatorMatrix& o) const;

  double inf_norm() const;        // max absolute row sum
  double frobenius() const;
  double max_abs() const;
  // ||M - M^H||_inf-style defect, entrywise max; 0 for Hermitian matrices
  double hermitian_defect() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Grid target_, source_;
  std::vector<cplx> m_;
};

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);

// Kernel construction per the partial-transform formula
//   K(x, y) = (F2^{-1} a)(x - A(x - y), x - y),
// realized as the inverse transform along the xi block followed by an exact
// sequence of coordinate operations (fractional shear, reflection, lattice
// shear). Requires a symbol grid whose xi block is the dual of the x block.
OperatorKernel kernel_from_symbol(const Field& a, const QuantizationMatrix& A);

// Exact inverse of kernel_from_symbol up to shear band-limit error.
Field symbol_from_kernel(const OperatorKernel& K, const QuantizationMatrix& A);

// Riemann-sum application sum_y K(x,y) f(y) dy.
Field kernel_apply(const OperatorKernel& K, const Field& f);

// Literal double quadrature of the quantization formula
//   (2 pi)^(-d) sum_xi sum_y a(x - A(x-y), xi) f(y) e^{i<x-y, xi>} dy dxi
// with the shifted first argument evaluated by trigonometric interpolation.
// Slow-path oracle, independent of the kernel factorization; d = 1.
Field direct_apply(const Field& a, const QuantizationMatrix& A, const Field& f);

OperatorMatrix op_matrix(const Field& a, const QuantizationMatrix& A);
OperatorMatrix op_matrix_from_kernel(const OperatorKernel& K);
OperatorKernel kernel_from_matrix(const OperatorMatrix& M, const QuantizationMatrix& A);

// Gaussian-damped phase-space presets used across tests and the CLI:
// poly_part x^a xi^b times e^{-(|x|^2+|xi|^2)/(2 sigma^2)}.
Field symbol_grid_field(const Grid& xgrid,
                        const std::function<cplx(double, double)>& f);
Grid symbol_grid(const Grid& xgrid);  // (x block, dual block)

}  // namespace psical
