#pragma once

#include "psical/field.hpp"
#include "psical/norms.hpp"

namespace psical {

// Short-time Fourier transform data of a k-axis field: values live on the
// 2k-axis product grid (original axes = window shifts, then the dual axes),
// together with the window and its quadrature L2 norm (carried so inversion
// is exact for any nonzero window).
struct StftData {
  Field values;
  Field window;
  double window_l2 = 0.0;
};

// pi^(-d/4) e^(-|x|^2 / 2) sampled on a grid with all-space roles.
Field gaussian_window(const Grid& grid);

// V_phi f(x, xi) = (2 pi)^(-k/2) sum_y f(y) conj(phi(y - x)) e^{-i<y, xi>} dy^k,
// one unitary FFT per on-grid shift x; window shifts are cyclic index rolls
// on the periodic grid, so every axis must be centered with 0 on-grid.
StftData stft(const Field& f, const Field& window);

// Inversion: f(x) = (2 pi)^(-k/2) ||phi||^{-2} sum_{y,eta} V(y,eta) phi(x-y)
// e^{i<x,eta>} dy^k deta^k. Exact roundtrip against stft by construction.
Field istft(const StftData& V);

// Modulation norm: mixed_norm of |V_phi f * omega| with the x block inner
// (integrated first) and the xi block outer, per the fixed order of the
// definition. spec.inner_axes is ignored and replaced by the space block.
double mod_norm(const Field& f, const Field& window, const MixedNormSpec& spec);

}  // namespace psical
