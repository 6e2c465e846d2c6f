#pragma once

#include <numbers>

// Unit conversions at the I/O boundary. Everything inside the library works in
// angular frequency (rad/s) and seconds.
namespace dctpa::units {

inline constexpr double speed_of_light = 299'792'458.0;  // m/s
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double femtosecond = 1e-15;

double omega_from_nm(double wavelength_nm);
double nm_from_omega(double omega);

// Width conversions use the local derivative |d omega / d lambda| at the
// given center wavelength ("nm-equivalent" widths).
double omega_width_from_nm(double width_nm, double center_nm);
double nm_width_from_omega(double width_omega, double center_nm);

}  // namespace dctpa::units
