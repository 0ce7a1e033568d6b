#pragma once

#include <span>

#include "psical/field.hpp"

namespace psical {

// Fourier convention, fixed once for the whole project (see docs/conventions.md):
//
//   forward:  g(xi) = (2*pi)^(-k/2) * sum_j f(x_j) e^{-i<x_j, xi>} * prod(dx)
//   inverse:  f(x)  = (2*pi)^(-k/2) * sum_k g(xi_k) e^{+i<x, xi_k>} * prod(dxi)
//
// over the k selected axes. Both directions are unitary with respect to the
// quadrature L2 norms, and inverse(forward(f)) == f to machine precision
// (the lattice pairing is exact). Transformed axes must be centered at 0;
// forward requires role Space, inverse requires role Frequency, and the axis
// is replaced by its dual with the role flipped.
enum class FtDirection { Forward, Inverse };

Field fourier(const Field& f, std::span<const std::size_t> axes, FtDirection dir);
Field fourier_all(const Field& f, FtDirection dir);

// Role-agnostic transform used by operators that treat a frequency axis as an
// integration variable (partial transforms of symbols, phase multipliers).
// Same normalization and axis bookkeeping, no role precondition.
Field dft_axes_raw(const Field& f, std::span<const std::size_t> axes, FtDirection dir);

namespace detail {
// In-place unitary 1-D pass along `axis` of a raw buffer with the grid's
// layout. Exposed for the streaming STFT path.
void dft_axis_inplace(std::span<cplx> values, const Grid& grid, std::size_t axis,
                      FtDirection dir);
}  // namespace detail

}  // namespace psical
