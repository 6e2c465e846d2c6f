#include "dctpa/analytic.hpp"

#include "dctpa/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dctpa {

namespace {

void check_ratio_inputs(const RatioInputs& in)
{
    if (!(in.bandwidth > 0.0) || !(in.gamma_p > 0.0) || !(in.gamma_f > 0.0)) {
        throw std::domain_error("ratio: bandwidths must be positive");
    }
    if (!(in.photons_per_mode >= 0.0) || !std::isfinite(in.photons_per_mode)) {
        throw std::domain_error("ratio: photons per mode must be finite and >= 0");
    }
}

void normalize_peak(std::vector<double>& y)
{
    const double peak = y.empty() ? 0.0 : *std::max_element(y.begin(), y.end());
    if (peak > 0.0) {
        for (auto& v : y) {
            v /= peak;
        }
    }
}

}  // namespace

double coherent_incoherent_ratio(const RatioInputs& in)
{
    check_ratio_inputs(in);
    const double n = in.photons_per_mode;
    if (n == 0.0) {
        throw std::domain_error("ratio: n = 0 (quantum low-flux limit is outside the formula)");
    }
    return in.bandwidth / (in.gamma_p + in.gamma_f) * (n * n + n / units::two_pi) / (n * n);
}

bool dominance_threshold(const RatioInputs& in)
{
    check_ratio_inputs(in);
    const double n = in.photons_per_mode;
    if (n == 0.0) {
        return true;
    }
    return in.bandwidth > (in.gamma_p + in.gamma_f) * (n * n) / (n * n + n / units::two_pi);
}

double square_wave_law(double phi)
{
    const double c = std::cos(0.5 * phi);
    return c * c;
}

double tl_coherent(const DownConverter& source, double pump_omega, const TpaWeights& weights,
                   const PhaseMask& signal_mask, const PhaseMask& idler_mask)
{
    auto pair = source.transform_limited(pump_omega);
    apply_mask_inplace(pair.signal, signal_mask);
    apply_mask_inplace(pair.idler, idler_mask);
    const SpectralField amplitude = cross_spectrum(pair.signal, pair.idler);
    const auto amp = amplitude.amplitude();
    const auto w = weights.values();
    double sum = 0.0;
    for (std::size_t q = 0; q < amp.size(); ++q) {
        sum += std::norm(amp[q]) * w[q];
    }
    return sum;
}

std::vector<double> tl_oracle(const SourceSpec& src, double pump_omega,
                              const TransitionSpec& transition, const PhaseMask& mask,
                              std::span<const double> taus)
{
    const DownConverter source(src);
    const TpaWeights weights(src.grid, transition);
    std::vector<double> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        out.push_back(tl_coherent(source, pump_omega, weights, mask.then(PhaseMask::delay(tau)), {}));
    }
    normalize_peak(out);
    return out;
}

std::vector<double> selectivity_curve(const PumpSpec& pump, const TransitionSpec& transition,
                                      std::span<const double> detunings)
{
    pump.validate();
    transition.validate();
    // Simpson rule over the truncated pump support.
    constexpr int kIntervals = 20000;
    const double bound = pump.max_excursion();
    const double h = 2.0 * bound / kIntervals;
    const double pump_norm =
        lineshape_mass(pump.lineshape, pump.fwhm_omega, -bound, bound);
    std::vector<double> out;
    out.reserve(detunings.size());
    for (double d : detunings) {
        double sum = 0.0;
        for (int i = 0; i <= kIntervals; ++i) {
            const double x = -bound + i * h;
            const double coeff = (i == 0 || i == kIntervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            sum += coeff * lineshape_density(pump.lineshape, pump.fwhm_omega, x) *
                   lineshape_density(transition.lineshape, transition.fwhm_omega, d + x);
        }
        out.push_back(sum * h / 3.0 / pump_norm);
    }
    normalize_peak(out);
    return out;
}

double curve_fwhm(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 3) {
        throw std::invalid_argument("curve_fwhm: need >= 3 matching samples");
    }
    const auto peak_it = std::max_element(y.begin(), y.end());
    const auto peak = static_cast<std::size_t>(peak_it - y.begin());
    const double half = 0.5 * *peak_it;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    auto crossing = [&](std::size_t a, std::size_t b) {
        return x[a] + (half - y[a]) * (x[b] - x[a]) / (y[b] - y[a]);
    };
    double left = nan;
    for (std::size_t i = peak; i > 0; --i) {
        if (y[i - 1] < half) {
            left = crossing(i - 1, i);
            break;
        }
    }
    double right = nan;
    for (std::size_t i = peak; i + 1 < y.size(); ++i) {
        if (y[i + 1] < half) {
            right = crossing(i, i + 1);
            break;
        }
    }
    return right - left;
}

double fit_scale(std::span<const double> y, std::span<const double> model)
{
    if (y.size() != model.size()) {
        throw std::invalid_argument("fit_scale: size mismatch");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        num += y[i] * model[i];
        den += model[i] * model[i];
    }
    return den > 0.0 ? num / den : 0.0;
}

double max_abs_deviation(std::span<const double> y, std::span<const double> model)
{
    if (y.size() != model.size()) {
        throw std::invalid_argument("max_abs_deviation: size mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        worst = std::max(worst, std::abs(y[i] - model[i]));
    }
    return worst;
}

double rms_deviation(std::span<const double> y, std::span<const double> model)
{
    if (y.size() != model.size() || y.empty()) {
        throw std::invalid_argument("rms_deviation: size mismatch");
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ss += (y[i] - model[i]) * (y[i] - model[i]);
    }
    return std::sqrt(ss / static_cast<double>(y.size()));
}

}  // namespace dctpa
