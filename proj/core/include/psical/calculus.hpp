#pragma once

#include <map>
#include <span>

#include "psical/quantize.hpp"
#include "psical/weights.hpp"

namespace psical {

inline constexpr unsigned kMaxPolyDegree = 12;
inline constexpr std::uint32_t kTensorRouteMaxCount = 32;

// Finite phase-space polynomial sum c_{alpha,beta} x^alpha xi^beta with an
// optional Gaussian damping sigma for rendering to a Field. On polynomials
// the transfer series terminates exactly.
class PolySymbol {
 public:
  using Key = std::pair<std::vector<unsigned>, std::vector<unsigned>>;

  explicit PolySymbol(std::size_t dim = 1, double sigma = 0.0)
      : dim_(dim), sigma_(sigma) {}

  static PolySymbol monomial(std::vector<unsigned> alpha, std::vector<unsigned> beta,
                             cplx coeff = {1.0, 0.0}, double sigma = 0.0);
  // 1-D convenience: x^a xi^b
  static PolySymbol monomial_1d(unsigned a, unsigned b, cplx coeff = {1.0, 0.0},
                                double sigma = 0.0);

  PolySymbol& add(const std::vector<unsigned>& alpha, const std::vector<unsigned>& beta,
                  cplx coeff);
  cplx coeff(const std::vector<unsigned>& alpha, const std::vector<unsigned>& beta) const;
  cplx coeff_1d(unsigned a, unsigned b) const;

  std::size_t dim() const { return dim_; }
  double sigma() const { return sigma_; }
  void set_sigma(double s) { sigma_ = s; }
  unsigned degree() const;
  bool empty() const { return terms_.empty(); }
  const std::map<Key, cplx>& terms() const { return terms_; }

  // Pointwise evaluation of the polynomial part times the damping.
  cplx eval(std::span<const double> x, std::span<const double> xi) const;

 private:
  std::size_t dim_;
  double sigma_;
  std::map<Key, cplx> terms_;
};

// Samples of the damped polynomial on a symbol grid (x block + dual block).
Field render(const PolySymbol& p, const Grid& symbol_grid);

// Quantization-transfer operator: sign = +1 applies e^{+i<A D_xi, D_x>},
// sign = -1 its inverse, via the exact factorization through the partial
// transform: inverse transform along xi, shear of the x block by -sign*A
// coupled to the transform variable, forward transform back.
Field transfer(const Field& a, const Mat& A, int sign);

// Same operator on polynomials as a terminating series
//   sum_k (sign*i)^k / k! <A D_xi, D_x>^k p,   D = -i d/dt,
// exact coefficient arithmetic; <A D_xi, D_x> lowers total degree by 2.
PolySymbol transfer_series(const PolySymbol& p, const Mat& A, int sign);

// Symbol b with op_B(b) == op_A(a): one shear by B - A inside the partial
// transform conjugation (b = e^{-i<(B-A) D_xi, D_x>} a).
Field quantization_change(const Field& a, const Mat& A, const Mat& B);

// Composition symbol: op_A(sharp(a1, a2, A)) == op_A(a1) . op_A(a2).
// Production path: kernel composition (matrix product, back to a symbol).
Field sharp(const Field& a1, const Field& a2, const QuantizationMatrix& A);

// Literal tensor construction of the composition symbol (build the 4-axis
// product, apply the cross phase e^{i<D_xi, D_y>}, restrict to the diagonal),
// with transfers around it for A != 0. Independent witness for the kernel
// route; refuses axis counts above kTensorRouteMaxCount.
Field sharp_tensor(const Field& a1, const Field& a2, const QuantizationMatrix& A);

// Restriction of a 2d-axis field to a fixed second-block point (no
// interpolation: x0 must be on the lattice) or to the diagonal.
Field trace_restrict(const Field& F, std::span<const double> x0);
Field trace_restrict_diagonal(const Field& F);

// Empirical constants for the sharp-product weight estimate: searches
// R0 = kappa(1/s) R + c0 on a small ladder and reports the smallest
//   sup_{X,Y,Z} [w1(X-Y+Z) e^{-R0|Z|^(1/s)} w2(X+Z) e^{-R0|Y-Z|^(1/s)}]
//              / [w1(X) w2(X) e^{-R|Y|^(1/s)}]
// over the box, X, Y, Z in R^dim.
struct SharpWeightReport {
  double r0 = 0.0;
  double margin = 0.0;
};
SharpWeightReport sharp_weight_check(const WeightSpec& w1, const WeightSpec& w2,
                                     double s, double R, const SweepBox& box);

}  // namespace psical
