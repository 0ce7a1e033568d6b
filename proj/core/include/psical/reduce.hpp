#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace psical {

// Pairwise (cascade) summation: deterministic order, O(log n) error growth.
template <typename T, typename Get>
T pairwise_sum_impl(std::size_t lo, std::size_t hi, const Get& get) {
  const std::size_t n = hi - lo;
  if (n <= 16) {
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += get(i);
    return acc;
  }
  const std::size_t mid = lo + n / 2;
  return pairwise_sum_impl<T>(lo, mid, get) + pairwise_sum_impl<T>(mid, hi, get);
}

template <typename Get>
auto pairwise_sum(std::size_t n, const Get& get) -> decltype(get(0)) {
  using T = decltype(get(0));
  if (n == 0) return T{};
  return pairwise_sum_impl<T>(0, n, get);
}

inline double pairwise_sum(std::span<const double> v) {
  return pairwise_sum(v.size(), [&](std::size_t i) { return v[i]; });
}

inline std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) {
  return pairwise_sum(v.size(), [&](std::size_t i) { return v[i]; });
}

}  // namespace psical
