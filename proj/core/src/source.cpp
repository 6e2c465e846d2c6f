#include "dctpa/source.hpp"

#include "dctpa/errors.hpp"
#include "dctpa/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace dctpa {

namespace {

constexpr double kTailLevel = 1e-6;
constexpr double kPumpTruncation = 5.0;  // in units of fwhm

}  // namespace

Rng realization_engine(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      0x5eedu};
    return Rng(seq);
}

PumpSpec PumpSpec::from_nm(double center_nm, double fwhm_nm, Lineshape shape)
{
    return PumpSpec{units::omega_from_nm(center_nm), units::omega_width_from_nm(fwhm_nm, center_nm),
                    shape};
}

void PumpSpec::validate() const
{
    if (!(center_omega > 0.0) || !std::isfinite(center_omega)) {
        throw ConfigError("pump.center", "must be positive");
    }
    if (!(fwhm_omega > 0.0) || !std::isfinite(fwhm_omega)) {
        throw ConfigError("pump.fwhm", "must be positive");
    }
}

double sample_pump(const PumpSpec& pump, Rng& rng)
{
    const double bound = kPumpTruncation * pump.fwhm_omega;
    if (pump.lineshape == Lineshape::lorentzian) {
        // Inverse CDF restricted to [-bound, bound].
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        const double theta_max = std::atan(bound / (0.5 * pump.fwhm_omega));
        const double theta = (2.0 * uniform(rng) - 1.0) * theta_max;
        const double offset = std::clamp(0.5 * pump.fwhm_omega * std::tan(theta), -bound, bound);
        return pump.center_omega + offset;
    }
    const double sigma = pump.fwhm_omega / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
    std::normal_distribution<double> normal(0.0, 1.0);
    double offset = 0.0;
    do {
        offset = sigma * normal(rng);
    } while (std::abs(offset) > bound);
    return pump.center_omega + offset;
}

EnvelopeShape parse_envelope(std::string_view name)
{
    if (name == "gaussian") {
        return EnvelopeShape::gaussian;
    }
    if (name == "flattop") {
        return EnvelopeShape::flattop;
    }
    throw ConfigError("unknown envelope '" + std::string(name) + "' (expected gaussian|flattop)");
}

std::string_view to_string(EnvelopeShape shape) noexcept
{
    return shape == EnvelopeShape::gaussian ? "gaussian" : "flattop";
}

double SourceSpec::envelope_at(double omega) const noexcept
{
    const double x = omega - center_omega;
    if (envelope == EnvelopeShape::flattop) {
        return std::abs(x) <= 0.5 * fwhm_omega ? 1.0 : 0.0;
    }
    return std::exp(-4.0 * std::numbers::ln2 * x * x / (fwhm_omega * fwhm_omega));
}

std::pair<double, double> SourceSpec::support() const noexcept
{
    double half = 0.5 * fwhm_omega;
    if (envelope == EnvelopeShape::gaussian) {
        half = fwhm_omega * std::sqrt(std::log(1.0 / kTailLevel) / (4.0 * std::numbers::ln2));
    }
    return {center_omega - half, center_omega + half};
}

void SourceSpec::validate() const
{
    if (!(fwhm_omega > 0.0) || !std::isfinite(fwhm_omega)) {
        throw ConfigError("source.fwhm", "envelope fwhm must be positive");
    }
    if (!(mean_photons_per_mode >= 0.0) || !std::isfinite(mean_photons_per_mode)) {
        throw ConfigError("source.photons_per_mode", "must be finite and >= 0");
    }
    if (fwhm_omega < grid.bin_width()) {
        throw ConfigError("source.fwhm", "envelope narrower than one grid bin");
    }
    const auto [lo, hi] = support();
    if (lo < grid.lower_edge() || hi > grid.upper_edge()) {
        throw ConfigError("grid.span",
                          "grid does not cover the envelope band (tails above 1e-6 of peak at the "
                          "grid edges)");
    }
}

void SourceSpec::check_mirror_coverage(double pump_lo, double pump_hi) const
{
    const auto [lo, hi] = support();
    const double mirrored_lo = pump_lo - hi;
    const double mirrored_hi = pump_hi - lo;
    if (mirrored_lo < grid.lower_edge() || mirrored_hi > grid.upper_edge()) {
        std::ostringstream msg;
        msg << "grid does not cover the envelope mirrored about the pump (needs ["
            << mirrored_lo << ", " << mirrored_hi << "] rad/s, grid is [" << grid.lower_edge()
            << ", " << grid.upper_edge() << "])";
        throw ConfigError("grid", msg.str());
    }
}

std::vector<double> spectral_density(const SourceSpec& src)
{
    const auto& grid = src.grid;
    std::vector<double> env(grid.size());
    double in_fwhm_sum = 0.0;
    std::size_t in_fwhm_count = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        env[k] = src.envelope_at(grid.omega(k));
        if (std::abs(grid.omega(k) - src.center_omega) <= 0.5 * src.fwhm_omega) {
            in_fwhm_sum += env[k];
            ++in_fwhm_count;
        }
    }
    if (in_fwhm_count == 0) {
        throw ConfigError("source.fwhm", "no grid bin inside the envelope fwhm");
    }
    const double mean_env = in_fwhm_sum / static_cast<double>(in_fwhm_count);
    const double scale = src.mean_photons_per_mode / (units::two_pi * mean_env);
    for (auto& e : env) {
        e *= scale;
    }
    return env;
}

long pump_sum_bin(const FrequencyGrid& grid, double pump_omega) noexcept
{
    return std::lround((pump_omega - 2.0 * grid.omega(0)) / grid.bin_width());
}

DownConverter::DownConverter(SourceSpec spec)
    : spec_(std::move(spec)), density_(spectral_density(spec_)), sqrt_half_density_(density_.size())
{
    for (std::size_t k = 0; k < density_.size(); ++k) {
        sqrt_half_density_[k] = std::sqrt(0.5 * density_[k]);
    }
}

SpectralField DownConverter::draw_signal(Rng& rng) const
{
    std::normal_distribution<double> normal(0.0, 1.0);
    SpectralField signal(spec_.grid);
    for (std::size_t k = 0; k < signal.size(); ++k) {
        const double re = normal(rng);
        const double im = normal(rng);
        signal[k] = Complex{re, im} * sqrt_half_density_[k];
    }
    return signal;
}

SpectralField DownConverter::conjugate_idler(const SpectralField& signal, double pump_omega) const
{
    const auto& grid = spec_.grid;
    if (!(signal.grid() == grid)) {
        throw ConfigError("conjugate_idler: signal is not on the source grid");
    }
    const long n = static_cast<long>(grid.size());
    const long m = pump_sum_bin(grid, pump_omega);
    const double peak = *std::max_element(density_.begin(), density_.end());
    SpectralField idler(grid);
    for (long k = 0; k < n; ++k) {
        const long j = m - k;
        if (j < 0 || j >= n) {
            if (density_[static_cast<std::size_t>(k)] > kTailLevel * peak) {
                throw ConfigError("grid", "envelope leaks off-grid: conjugate of an occupied bin "
                                          "falls outside the grid");
            }
            continue;
        }
        const auto ks = static_cast<std::size_t>(k);
        const auto js = static_cast<std::size_t>(j);
        const double weight = js == ks ? 1.0 : std::sqrt(grid.omega(js) / grid.omega(ks));
        idler[js] = std::conj(signal[ks]) * weight;
    }
    return idler;
}

DownConvertedPair DownConverter::generate(const PumpSpec& pump, Rng& rng) const
{
    const double pump_omega = sample_pump(pump, rng);
    SpectralField signal = draw_signal(rng);
    SpectralField idler = conjugate_idler(signal, pump_omega);
    return DownConvertedPair{std::move(signal), std::move(idler), pump_omega};
}

DownConvertedPair DownConverter::transform_limited(double pump_omega) const
{
    SpectralField signal(spec_.grid);
    for (std::size_t k = 0; k < signal.size(); ++k) {
        signal[k] = std::sqrt(density_[k]);
    }
    SpectralField idler = conjugate_idler(signal, pump_omega);
    return DownConvertedPair{std::move(signal), std::move(idler), pump_omega};
}

DownConvertedPair generate_pair(const SourceSpec& src, const PumpSpec& pump, Rng& rng)
{
    return DownConverter(src).generate(pump, rng);
}

}  // namespace dctpa
