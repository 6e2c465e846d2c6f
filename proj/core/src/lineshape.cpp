#include "dctpa/lineshape.hpp"

#include "dctpa/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dctpa {

namespace {

double gaussian_sigma(double fwhm) noexcept
{
    return fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
}

}  // namespace

Lineshape parse_lineshape(std::string_view name)
{
    if (name == "gaussian") {
        return Lineshape::gaussian;
    }
    if (name == "lorentzian") {
        return Lineshape::lorentzian;
    }
    throw ConfigError("unknown lineshape '" + std::string(name) + "' (expected gaussian|lorentzian)");
}

std::string_view to_string(Lineshape shape) noexcept
{
    return shape == Lineshape::gaussian ? "gaussian" : "lorentzian";
}

double lineshape_density(Lineshape shape, double fwhm, double detuning) noexcept
{
    if (shape == Lineshape::gaussian) {
        const double sigma = gaussian_sigma(fwhm);
        const double z = detuning / sigma;
        return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
    }
    const double half = 0.5 * fwhm;
    return half / (std::numbers::pi * (detuning * detuning + half * half));
}

double lineshape_mass(Lineshape shape, double fwhm, double lo, double hi) noexcept
{
    if (shape == Lineshape::gaussian) {
        const double s = gaussian_sigma(fwhm) * std::sqrt(2.0);
        return 0.5 * (std::erf(hi / s) - std::erf(lo / s));
    }
    const double half = 0.5 * fwhm;
    return (std::atan(hi / half) - std::atan(lo / half)) / std::numbers::pi;
}

}  // namespace dctpa
