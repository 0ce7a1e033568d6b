#pragma once

#include <string>
#include <vector>

#include "psical/field.hpp"
#include "psical/stft.hpp"
#include "psical/weights.hpp"

namespace psical {

// Hard cap on spectral differentiation order: higher orders amplify grid
// noise beyond usefulness.
inline constexpr int kMaxDerivativeOrder = 8;

// Fitted constants of the log-linear STFT decay model
//   log|V| ~ logC + coeff_x |x|^(1/s) + coeff_xi |xi|^(1/s)
// over nodes with |V| above the floor. Orientation maps the raw coefficients
// to (h, eps) with the sign pattern of the growth/decay characterization:
//   XGrowth : |V| <~ e^{ h |x|^(1/s) - eps |xi|^(1/s)}  (h = coeff_x,  eps = -coeff_xi)
//   XiGrowth: |V| <~ e^{ eps |x|^(1/s) - h |xi|^(1/s)}  (eps = coeff_x, h = -coeff_xi)
enum class DecayOrientation { XGrowth, XiGrowth };

struct DecayFit {
  double s = 1.0;
  double h = 0.0;
  double eps = 0.0;
  double logC = 0.0;
  double residual = 0.0;  // RMS in log units
  double floor = 0.0;
  double coeff_x = 0.0;
  double coeff_xi = 0.0;
  std::size_t nodes = 0;
};

struct SeminormEntry {
  std::vector<unsigned> alpha, beta;
  double value = 0.0;
};

struct SeminormReport {
  double s = 1.0, t = 1.0, h = 1.0;
  int order = 0;
  double value = 0.0;  // max over the table
  std::vector<SeminormEntry> table;
};

// sup_x |x^beta d^alpha f(x)| / (h^(|a|+|b|) a!^s b!^t), truncated at
// |alpha|, |beta| <= M; derivatives are spectral (multiply by (i xi)^alpha).
SeminormReport gs_seminorm(const Field& f, double s, double t, double h, int M);

// sup_{|alpha| <= M} ||e^{-r|.|^(1/s)} d^alpha f||_inf / (a!^s h^|alpha|).
double gamma_norm(const Field& f, double s, double h, double r, int M);

// Least-squares fit of the decay model over supra-floor nodes of V. The
// floor is max(machine_eps * ||V||_inf, 1e-14) unless overridden; at least
// 100 nodes required.
DecayFit fit_stft_decay(const StftData& V, double s, DecayOrientation orientation,
                        double floor_override = 0.0);

// Synthetic decay data on the product grid of `grid`, for fit validation:
// |V| = exp(logC + a |x|^(1/s) + b |xi|^(1/s)).
StftData synthesize_decay_data(const Grid& grid, double s, double logC, double a, double b);

struct BoxFit {
  double radius = 0.0;
  DecayFit x_fit;   // XGrowth orientation
  DecayFit xi_fit;  // XiGrowth orientation
};

// Verdicts are diagnostics ("consistent with"), never certificates: finite
// grids cannot quantify over all eps or h.
struct MembershipReport {
  double s = 1.0;
  std::vector<BoxFit> fits;
  std::string verdict;
  std::string to_json() const;
};

// Runs fit_stft_decay on a ladder of nested centered boxes. Each ladder grid
// must be a same-spacing subgrid of f's grid, so restriction is an exact
// sample extraction.
MembershipReport classify(const Field& f, const Field& window, double s,
                          const std::vector<Grid>& ladder);

// sup over the full STFT grid of |V_phi a(X, Xi)| e^{R |Xi|^(1/s)} / omega(X),
// restricted to nodes with |V| above the fit floor max(machine_eps * peak,
// 1e-14): below it the transform values are quadrature noise and the growing
// Xi weight would amplify them without bound. Streams shift by shift, so
// symbol grids up to N = 256 per axis stay in memory. Finite, slowly varying
// values across an R ladder support membership in the omega-weighted class.
double s_omega_margin(const Field& a, const Field& window, const WeightSpec& omega,
                      double s, double R);

// Pointwise Gaussian damping e^{-(eps1 |x|^2 + eps2 |xi|^2)}: eps1 acts on
// space-role axes, eps2 on frequency-role axes.
Field regularize(const Field& f, double eps1, double eps2);

}  // namespace psical
