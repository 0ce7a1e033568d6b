#pragma once

#include "psical/field.hpp"
#include "psical/mat.hpp"

namespace psical {

// Fields on 2d axes grouped into two d-blocks: block 0 = axes [0, d),
// block 1 = axes [d, 2d).

// (shear F)(x, y) = F(x + sign*A*y, y): per y-slice, forward FFT along the
// x-block, multiply by the phase ramp e^{i sign <u, A y>}, inverse FFT.
// Exact for band-limited F; otherwise the shift wraps periodically.
Field shear(const Field& F, const Mat& A, int sign);

// (shear_second F)(x, y) = F(x, y + sign*B*x), same construction along block 1.
Field shear_second(const Field& F, const Mat& B, int sign);

// Coordinate reflection t -> -t on every axis of the given block (0 or 1).
// Exact index permutation on a centered periodic lattice.
Field reflect_block(const Field& F, int block);

}  // namespace psical
