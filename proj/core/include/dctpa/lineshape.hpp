#pragma once

#include <string_view>

namespace dctpa {

enum class Lineshape { gaussian, lorentzian };

Lineshape parse_lineshape(std::string_view name);  // throws ConfigError
std::string_view to_string(Lineshape shape) noexcept;

/// Unit-area profile with the given full width at half maximum, evaluated at
/// `detuning` (same units as fwhm).
double lineshape_density(Lineshape shape, double fwhm, double detuning) noexcept;

/// Integral of the unit-area profile over [lo, hi].
double lineshape_mass(Lineshape shape, double fwhm, double lo, double hi) noexcept;

}  // namespace dctpa
