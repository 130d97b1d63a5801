#pragma once

// Newton's identities between power sums p_k = sum_i x_i^k and elementary
// symmetric polynomials e_k.

#include <complex>
#include <span>
#include <vector>

namespace nonnoether {

enum class NewtonDirection { power_to_elementary, elementary_to_power };

/// Converts (v_1, ..., v_m) between power sums and elementary symmetric
/// polynomials of the same underlying m-element multiset.
std::vector<double> newton_convert(std::span<const double> values, NewtonDirection direction);

std::vector<double> elementary_from_power_sums(std::span<const double> p);
std::vector<double> power_sums_from_elementary(std::span<const double> e);

/// e_1..e_m of the given values (m = values.size()).
std::vector<std::complex<double>> elementary_symmetric(std::span<const std::complex<double>> values);
std::vector<double> elementary_symmetric(std::span<const double> values);

}  // namespace nonnoether
