#pragma once

#include "dctpa/lineshape.hpp"
#include "dctpa/spectral.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace dctpa {

using Rng = std::mt19937_64;

/// Independent stream for one realization. The same (seed, index) always gives
/// the same stream regardless of which worker draws it.
Rng realization_engine(std::uint64_t seed, std::uint64_t index);

/// Narrowband pump. Widths are FWHM in rad/s.
struct PumpSpec {
    double center_omega = 0.0;
    double fwhm_omega = 0.0;
    Lineshape lineshape = Lineshape::lorentzian;

    static PumpSpec from_nm(double center_nm, double fwhm_nm, Lineshape shape);
    void validate() const;  // throws ConfigError

    /// Pump draws never leave center +- max_excursion().
    double max_excursion() const noexcept { return 5.0 * fwhm_omega; }
};

/// One pump-frequency draw. Both lineshapes are truncated at +-5 fwhm; the
/// draw consumes the same RNG calls whatever the center, so shifting the
/// center shifts every draw by the same amount.
double sample_pump(const PumpSpec& pump, Rng& rng);

enum class EnvelopeShape { gaussian, flattop };

EnvelopeShape parse_envelope(std::string_view name);
std::string_view to_string(EnvelopeShape shape) noexcept;

struct SourceSpec {
    FrequencyGrid grid;
    EnvelopeShape envelope = EnvelopeShape::gaussian;
    double center_omega = 0.0;
    double fwhm_omega = 0.0;  // B
    double mean_photons_per_mode = 1.0;  // n

    /// Unit-peak envelope shape at omega.
    double envelope_at(double omega) const noexcept;

    /// Frequency interval outside of which the envelope is below 1e-6 of peak.
    std::pair<double, double> support() const noexcept;

    /// Structural checks plus "tails < 1e-6 of peak at the grid edges".
    void validate() const;

    /// Throws ConfigError if mirroring the envelope support about any pump
    /// frequency in [pump_lo, pump_hi] leaves the grid.
    void check_mirror_coverage(double pump_lo, double pump_hi) const;
};

/// Calibrated mean spectral density <|E_s(omega_k)|^2> per bin: unit-peak
/// envelope scaled so the mean photon number per mode (bin) over the envelope
/// fwhm equals n, with photons per mode = 2 pi * density.
std::vector<double> spectral_density(const SourceSpec& src);

/// One joint realization. The idler obeys
///   sqrt(omega_j) E_s(omega_k) = sqrt(omega_k) E_i^*(omega_j),
/// with j the bin nearest pump_omega - omega_k.
struct DownConvertedPair {
    SpectralField signal;
    SpectralField idler;
    double pump_omega = 0.0;
};

/// Index on grid.sum_grid() of the bin nearest pump_omega (may be out of range).
long pump_sum_bin(const FrequencyGrid& grid, double pump_omega) noexcept;

/// Caches the spectral density so realizations are cheap to draw.
class DownConverter {
public:
    explicit DownConverter(SourceSpec spec);

    const SourceSpec& spec() const noexcept { return spec_; }
    const FrequencyGrid& grid() const noexcept { return spec_.grid; }
    std::span<const double> density() const noexcept { return density_; }

    /// Signal beam alone: independent circular complex Gaussian per bin.
    SpectralField draw_signal(Rng& rng) const;

    /// Conjugate idler of `signal` for a pump at pump_omega.
    SpectralField conjugate_idler(const SpectralField& signal, double pump_omega) const;

    /// Pump draw first, then the signal; the idler is derived from both.
    DownConvertedPair generate(const PumpSpec& pump, Rng& rng) const;

    /// Deterministic transform-limited pair: E_s = sqrt(density), idler mapped
    /// about pump_omega.
    DownConvertedPair transform_limited(double pump_omega) const;

private:
    SourceSpec spec_;
    std::vector<double> density_;
    std::vector<double> sqrt_half_density_;
};

DownConvertedPair generate_pair(const SourceSpec& src, const PumpSpec& pump, Rng& rng);

}  // namespace dctpa
