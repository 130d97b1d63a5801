#include "nonnoether/symmetric.hpp"

namespace nonnoether {

// k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
std::vector<double> elementary_from_power_sums(std::span<const double> p) {
  const std::size_t m = p.size();
  std::vector<double> e(m + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 1; k <= m; ++k) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      const double term = e[k - i] * p[i - 1];
      acc += (i % 2 == 1) ? term : -term;
    }
    e[k] = acc / static_cast<double>(k);
  }
  return {e.begin() + 1, e.end()};
}

// p_k = (-1)^{k-1} k e_k + sum_{i=1}^{k-1} (-1)^{k-1+i} e_{k-i} p_i
std::vector<double> power_sums_from_elementary(std::span<const double> e) {
  const std::size_t m = e.size();
  std::vector<double> p(m, 0.0);
  for (std::size_t k = 1; k <= m; ++k) {
    double acc = static_cast<double>(k) * e[k - 1];
    if (k % 2 == 0) acc = -acc;
    for (std::size_t i = 1; i < k; ++i) {
      const double term = e[k - i - 1] * p[i - 1];
      acc += ((k - 1 + i) % 2 == 0) ? term : -term;
    }
    p[k - 1] = acc;
  }
  return p;
}

std::vector<double> newton_convert(std::span<const double> values, NewtonDirection direction) {
  return direction == NewtonDirection::power_to_elementary ? elementary_from_power_sums(values)
                                                           : power_sums_from_elementary(values);
}

namespace {

template <class T>
std::vector<T> elementary_impl(std::span<const T> values) {
  // coefficients of prod (1 + x_i t)
  std::vector<T> e(values.size() + 1, T(0));
  e[0] = T(1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += values[i] * e[k - 1];
  }
  return {e.begin() + 1, e.end()};
}

}  // namespace

std::vector<std::complex<double>> elementary_symmetric(std::span<const std::complex<double>> values) {
  return elementary_impl(values);
}

std::vector<double> elementary_symmetric(std::span<const double> values) { return elementary_impl(values); }

}  // namespace nonnoether
