#pragma once

#include "dctpa/detector.hpp"
#include "dctpa/shaper.hpp"
#include "dctpa/source.hpp"

#include <span>
#include <vector>

namespace dctpa {

/// Bandwidths in rad/s (any common unit works), n in photons per mode.
struct RatioInputs {
    double bandwidth = 0.0;  // B
    double gamma_p = 0.0;
    double gamma_f = 0.0;
    double photons_per_mode = 0.0;  // n
};

/// B / (gamma_p + gamma_f) * (n^2 + n / 2pi) / n^2. Throws std::domain_error
/// for n == 0 and for non-positive widths.
double coherent_incoherent_ratio(const RatioInputs& in);

/// True iff B > (gamma_p + gamma_f) * n^2 / (n^2 + n / 2pi) (strict).
/// For n == 0 the quantum term dominates and the result is true.
bool dominance_threshold(const RatioInputs& in);

/// Fine-period square-wave control law cos^2(phi / 2).
double square_wave_law(double phi);

/// Coherent TPA of the deterministic transform-limited pair (E_s = sqrt(S),
/// idler mapped about pump_omega) after the given masks: the same
/// cross-spectrum and lineshape weights as the Monte-Carlo, on one pair.
double tl_coherent(const DownConverter& source, double pump_omega, const TpaWeights& weights,
                   const PhaseMask& signal_mask, const PhaseMask& idler_mask);

/// Delay-scan oracle: mask followed by Delay(tau) on the signal, normalized to
/// a peak of 1.
std::vector<double> tl_oracle(const SourceSpec& src, double pump_omega,
                              const TransitionSpec& transition, const PhaseMask& mask,
                              std::span<const double> taus);

/// Expected coherent TPA versus pump-center detuning d (rad/s): the overlap
/// integral of the truncated pump lineshape with the final-state lineshape,
/// int P(x) L(d + x) dx, normalized to a peak of 1.
std::vector<double> selectivity_curve(const PumpSpec& pump, const TransitionSpec& transition,
                                      std::span<const double> detunings);

/// Full width at half maximum of a sampled curve around its global maximum,
/// with linear interpolation between samples. NaN if either half-maximum
/// crossing is missing.
double curve_fwhm(std::span<const double> x, std::span<const double> y);

/// Least-squares scale a minimizing sum (y - a * model)^2.
double fit_scale(std::span<const double> y, std::span<const double> model);

/// max |y - model| and rms(y - model).
double max_abs_deviation(std::span<const double> y, std::span<const double> model);
double rms_deviation(std::span<const double> y, std::span<const double> model);

}  // namespace dctpa
