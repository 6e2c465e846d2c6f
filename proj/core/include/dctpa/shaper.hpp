#pragma once

#include "dctpa/spectral.hpp"

#include <filesystem>
#include <utility>
#include <variant>
#include <vector>

namespace dctpa {

namespace mask {

struct Constant {
    double phase = 0.0;

    friend bool operator==(const Constant&, const Constant&) = default;
};

/// Phase omega * tau: delays the temporal envelope by tau.
struct Delay {
    double tau = 0.0;  // s

    friend bool operator==(const Delay&, const Delay&) = default;
};

/// Phase (gdd / 2) (omega - reference)^2.
struct Dispersion {
    double gdd = 0.0;  // s^2
    double reference_omega = 0.0;

    friend bool operator==(const Dispersion&, const Dispersion&) = default;
};

/// 50% duty square wave alternating 0 / magnitude over frequency. An edge sits
/// at `offset`; the band just above it has phase 0.
struct SquareWave {
    double magnitude = 0.0;  // rad
    double period = 0.0;     // rad/s
    double offset = 0.0;     // rad/s

    friend bool operator==(const SquareWave&, const SquareWave&) = default;
};

/// Phase breakpoints sorted by angular frequency; each bin takes the phase of
/// the nearest breakpoint, bins outside the table span get zero.
struct Tabulated {
    std::vector<std::pair<double, double>> points;  // (omega, phase)

    friend bool operator==(const Tabulated&, const Tabulated&) = default;
};

using Term = std::variant<Constant, Delay, Dispersion, SquareWave, Tabulated>;

}  // namespace mask

/// Pure spectral phase filter. Internally a flat list of terms whose phases add,
/// so composition is associative and the empty mask is the identity.
class PhaseMask {
public:
    PhaseMask() = default;

    static PhaseMask constant(double phase);
    static PhaseMask delay(double tau_s);
    static PhaseMask dispersion(double gdd_s2, double reference_omega);
    static PhaseMask tabulated(std::vector<std::pair<double, double>> omega_phase);
    static PhaseMask compose(const std::vector<PhaseMask>& masks);

    /// Phase in rad at omega (not wrapped).
    double phase(double omega) const;

    const std::vector<mask::Term>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    /// This mask followed by `next`.
    PhaseMask then(const PhaseMask& next) const;

    friend bool operator==(const PhaseMask&, const PhaseMask&) = default;

private:
    explicit PhaseMask(mask::Term term) { terms_.push_back(std::move(term)); }
    friend PhaseMask square_wave_mask(double, double, double);

    std::vector<mask::Term> terms_;
};

/// Throws ConfigError for a non-positive period or non-finite parameters. The
/// period is checked against the grid resolution (>= 4 bins) in apply_mask.
PhaseMask square_wave_mask(double magnitude, double period, double offset);

/// amplitude(omega) * exp(i phase(omega)). Phases are wrapped to [0, 2 pi)
/// before use; bins whose wrapped phase is exactly zero are left untouched, so
/// identity masks are bit-exact.
SpectralField apply_mask(const SpectralField& field, const PhaseMask& mask);
void apply_mask_inplace(SpectralField& field, const PhaseMask& mask);

/// Two-column text table (wavelength_nm, phase_rad), rows strictly monotone in
/// wavelength; '#' starts a comment.
PhaseMask load_phase_table(const std::filesystem::path& path);

}  // namespace dctpa
