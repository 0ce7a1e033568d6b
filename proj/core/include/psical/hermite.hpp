#pragma once

#include <vector>

#include "psical/field.hpp"

namespace psical {

// Orthonormal Hermite functions on a 1-D grid, generated by the stable
// three-term recurrence
//   h_0(x) = pi^(-1/4) e^(-x^2/2),
//   h_1(x) = sqrt(2) x h_0(x),
//   h_{k+1}(x) = sqrt(2/(k+1)) x h_k(x) - sqrt(k/(k+1)) h_{k-1}(x),
// with optional quadrature renormalization to unit L2 norm on the grid.
Field hermite_function(std::size_t k, const Grid& grid, bool renormalize = true);

std::vector<Field> hermite_set(std::size_t count, const Grid& grid);

}  // namespace psical
