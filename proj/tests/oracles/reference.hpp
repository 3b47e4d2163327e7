#pragma once

#include <array>
#include <numbers>

namespace oracle {

// Tail coefficients of nu0 ~ y^{1/2} sum b_n (2y)^{-3n/2}, from a symbolic
// order-by-order solve of 4 nu'' + y nu - nu^3 = 0 (sympy).
inline constexpr std::array<double, 9> bn_reference = {1, 0, -4, 0, -584, 0, -341024, 0, -445192864};

// Energy of the Thomas-Fermi profile with the kinetic term dropped,
// |S^{d-1}| int_0^1 -(1 - r^2)^2 / 2 r^{d-1} dr (sympy).
inline constexpr double tf_energy_d1 = -8.0 / 15.0;
inline constexpr double tf_energy_d2 = -std::numbers::pi / 6.0;
inline constexpr double tf_energy_d3 = -16.0 * std::numbers::pi / 105.0;

}  // namespace oracle
