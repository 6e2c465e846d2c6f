#include "dctpa/detector.hpp"

#include "dctpa/errors.hpp"
#include "dctpa/units.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace dctpa {

TransitionSpec TransitionSpec::from_nm(double wavelength_nm, double fwhm_nm, Lineshape shape)
{
    // Omega_f = omega of the one-photon-equivalent wavelength.
    return TransitionSpec{units::omega_from_nm(wavelength_nm),
                          units::omega_width_from_nm(fwhm_nm, wavelength_nm), shape};
}

void TransitionSpec::validate() const
{
    if (!(omega_f > 0.0) || !std::isfinite(omega_f)) {
        throw ConfigError("transition.wavelength", "must be positive");
    }
    if (!(fwhm_omega > 0.0) || !std::isfinite(fwhm_omega)) {
        throw ConfigError("transition.fwhm", "gamma_f must be positive");
    }
}

TpaWeights::TpaWeights(const FrequencyGrid& field_grid, const TransitionSpec& transition)
    : sum_grid_(field_grid.sum_grid()), values_(sum_grid_.size())
{
    transition.validate();
    const double lo = sum_grid_.lower_edge() - transition.omega_f;
    const double hi = sum_grid_.upper_edge() - transition.omega_f;
    const double mass = lineshape_mass(transition.lineshape, transition.fwhm_omega, lo, hi);
    if (mass < 1.0 - 1e-3) {
        std::ostringstream msg;
        msg << "sum-frequency grid truncates " << (1.0 - mass)
            << " of the final-state lineshape (limit 1e-3)";
        throw ConfigError("transition", msg.str());
    }
    const double d_omega = sum_grid_.bin_width();
    for (std::size_t q = 0; q < values_.size(); ++q) {
        values_[q] = lineshape_density(transition.lineshape, transition.fwhm_omega,
                                       sum_grid_.omega(q) - transition.omega_f) *
                     d_omega;
    }
}

TpaAccumulator::TpaAccumulator(const FrequencyGrid& field_grid)
    : n_sum_(2 * field_grid.size()), referenced_(2 * n_sum_ - 1), pump_hist_(n_sum_, 0)
{
}

void TpaAccumulator::add(const SpectralField& amplitude, long pump_bin, const TpaWeights& weights)
{
    if (amplitude.size() != n_sum_ || weights.values().size() != n_sum_) {
        throw ConfigError("tpa_signal: all realizations must share one grid");
    }
    if (pump_bin < 0 || pump_bin >= static_cast<long>(n_sum_)) {
        throw ConfigError("pump", "pump frequency falls outside the sum-frequency grid");
    }
    const auto m = static_cast<std::size_t>(pump_bin);
    const auto amp = amplitude.amplitude();
    const auto w = weights.values();
    double power = 0.0;
    // Offset q - m maps to referenced_[q - m + n_sum_ - 1].
    Complex* shifted = referenced_.data() + (n_sum_ - 1 - m);
    for (std::size_t q = 0; q < n_sum_; ++q) {
        power += std::norm(amp[q]) * w[q];
        shifted[q] += amp[q];
    }
    weighted_power_ += power;
    ++pump_hist_[m];
    ++count_;
}

void TpaAccumulator::merge(const TpaAccumulator& other)
{
    if (other.n_sum_ != n_sum_) {
        throw ConfigError("tpa_signal: cannot merge accumulators of different grids");
    }
    count_ += other.count_;
    weighted_power_ += other.weighted_power_;
    for (std::size_t i = 0; i < referenced_.size(); ++i) {
        referenced_[i] += other.referenced_[i];
    }
    for (std::size_t i = 0; i < pump_hist_.size(); ++i) {
        pump_hist_[i] += other.pump_hist_[i];
    }
}

double TpaAccumulator::total(const TpaWeights& /*weights*/) const
{
    if (count_ == 0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return weighted_power_ / static_cast<double>(count_);
}

double TpaAccumulator::coherent(const TpaWeights& weights) const
{
    if (count_ == 0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    // sum_m h_m / R * sum_q |S_{q-m} / R|^2 w_q
    const auto w = weights.values();
    const double r = static_cast<double>(count_);
    std::vector<double> power(referenced_.size());
    for (std::size_t i = 0; i < power.size(); ++i) {
        power[i] = std::norm(referenced_[i]);
    }
    double sum = 0.0;
    for (std::size_t m = 0; m < n_sum_; ++m) {
        if (pump_hist_[m] == 0) {
            continue;
        }
        const double* shifted = power.data() + (n_sum_ - 1 - m);
        double inner = 0.0;
        for (std::size_t q = 0; q < n_sum_; ++q) {
            inner += shifted[q] * w[q];
        }
        sum += static_cast<double>(pump_hist_[m]) * inner;
    }
    return sum / (r * r * r);
}

Complex TpaAccumulator::mean_amplitude() const
{
    if (count_ == 0) {
        return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    }
    return referenced_[n_sum_ - 1] / static_cast<double>(count_);
}

std::size_t default_batch_count(std::size_t realizations) noexcept
{
    return std::min<std::size_t>(realizations, 20);
}

namespace {

double batch_stderr(std::span<const double> values)
{
    const auto n = values.size();
    if (n < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1)));
}

std::size_t batch_begin(std::size_t b, std::size_t batches, std::size_t realizations)
{
    return realizations * b / batches;
}

}  // namespace

TpaResult summarize(const TpaAccumulator& merged, std::span<const BatchEstimate> batches,
                    const TpaWeights& weights)
{
    TpaResult out;
    out.realizations = merged.count();
    out.batches = batches.size();
    out.total = merged.total(weights);
    out.coherent = merged.coherent(weights);
    out.mean_amplitude = merged.mean_amplitude();
    out.incoherent_defined = merged.count() >= 2;
    out.incoherent = out.incoherent_defined ? out.total - out.coherent
                                            : std::numeric_limits<double>::quiet_NaN();

    std::vector<double> t;
    std::vector<double> c;
    std::vector<double> ic;
    for (const auto& b : batches) {
        t.push_back(b.total);
        c.push_back(b.coherent);
        ic.push_back(b.total - b.coherent);
    }
    out.stderr_total = batch_stderr(t);
    out.stderr_coherent = batch_stderr(c);
    out.stderr_incoherent = batch_stderr(ic);
    return out;
}

TpaResult tpa_signal(std::span<const DownConvertedPair> pairs, const TransitionSpec& transition,
                     std::size_t batches)
{
    if (pairs.empty()) {
        throw ConfigError("tpa_signal: empty ensemble");
    }
    const auto& grid = pairs.front().signal.grid();
    const TpaWeights weights(grid, transition);
    const std::size_t r = pairs.size();
    const std::size_t nb = std::clamp<std::size_t>(batches == 0 ? default_batch_count(r) : batches,
                                                   1, r);

    CrossSpectrum conv(grid);
    SpectralField amplitude(grid.sum_grid());
    TpaAccumulator merged(grid);
    std::vector<BatchEstimate> estimates;
    estimates.reserve(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        TpaAccumulator local(grid);
        for (std::size_t i = batch_begin(b, nb, r); i < batch_begin(b + 1, nb, r); ++i) {
            const auto& pair = pairs[i];
            if (!(pair.signal.grid() == grid) || !(pair.idler.grid() == grid)) {
                throw ConfigError("tpa_signal: all pairs must share one grid");
            }
            conv.set_signal(pair.signal);
            conv.set_idler(pair.idler);
            conv.compute(amplitude);
            local.add(amplitude, pump_sum_bin(grid, pair.pump_omega), weights);
        }
        estimates.push_back({local.total(weights), local.coherent(weights)});
        merged.merge(local);
    }
    return summarize(merged, estimates, weights);
}

namespace {

struct PointPlan {
    bool reuse_signal = false;  // same signal mask as the previous point
    bool reuse_idler = false;   // same pump center and idler mask as the previous point
};

}  // namespace

std::vector<TpaResult> scan_ensemble(const DownConverter& source, const PumpSpec& pump,
                                     const TransitionSpec& transition,
                                     std::span<const ScanPoint> points,
                                     const EnsembleOptions& options)
{
    pump.validate();
    const auto& grid = source.grid();
    const TpaWeights weights(grid, transition);
    const std::size_t n_points = points.size();
    const std::size_t r = options.realizations;
    if (r == 0) {
        throw ConfigError("realizations", "need at least one realization");
    }
    if (n_points == 0) {
        return {};
    }
    for (const auto& p : points) {
        source.spec().check_mirror_coverage(p.pump_center_omega - pump.max_excursion(),
                                            p.pump_center_omega + pump.max_excursion());
    }
    const std::size_t nb = std::clamp<std::size_t>(
        options.batches == 0 ? default_batch_count(r) : options.batches, 1, r);

    std::vector<PointPlan> plan(n_points);
    for (std::size_t p = 1; p < n_points; ++p) {
        plan[p].reuse_signal = points[p].signal_mask == points[p - 1].signal_mask;
        plan[p].reuse_idler = points[p].pump_center_omega == points[p - 1].pump_center_omega &&
                              points[p].idler_mask == points[p - 1].idler_mask;
    }

    std::vector<TpaAccumulator> merged(n_points, TpaAccumulator(grid));
    std::vector<std::vector<BatchEstimate>> estimates(n_points, std::vector<BatchEstimate>(nb));

    std::mutex merge_mutex;
    std::condition_variable merge_cv;
    std::size_t next_merge = 0;
    std::atomic<std::size_t> next_batch{0};
    std::atomic<bool> failed{false};
    std::exception_ptr failure;

    auto run_batch = [&](std::size_t b) {
        CrossSpectrum conv(grid);
        SpectralField amplitude(grid.sum_grid());
        std::vector<TpaAccumulator> local(n_points, TpaAccumulator(grid));
        for (std::size_t i = batch_begin(b, nb, r); i < batch_begin(b + 1, nb, r); ++i) {
            Rng rng = realization_engine(options.seed, i);
            const double offset = sample_pump(pump, rng) - pump.center_omega;
            const SpectralField signal = source.draw_signal(rng);
            for (std::size_t p = 0; p < n_points; ++p) {
                const auto& point = points[p];
                const double pump_omega = point.pump_center_omega + offset;
                if (p == 0 || !plan[p].reuse_signal) {
                    conv.set_signal(apply_mask(signal, point.signal_mask));
                }
                if (p == 0 || !plan[p].reuse_idler) {
                    SpectralField idler = source.conjugate_idler(signal, pump_omega);
                    apply_mask_inplace(idler, point.idler_mask);
                    conv.set_idler(idler);
                }
                conv.compute(amplitude);
                local[p].add(amplitude, pump_sum_bin(grid, pump_omega), weights);
            }
        }
        for (std::size_t p = 0; p < n_points; ++p) {
            estimates[p][b] = {local[p].total(weights), local[p].coherent(weights)};
        }
        std::unique_lock lock(merge_mutex);
        merge_cv.wait(lock, [&] { return next_merge == b || failed.load(); });
        if (failed.load()) {
            return;
        }
        for (std::size_t p = 0; p < n_points; ++p) {
            merged[p].merge(local[p]);
        }
        ++next_merge;
        merge_cv.notify_all();
    };

    auto worker = [&] {
        while (!failed.load()) {
            const std::size_t b = next_batch.fetch_add(1);
            if (b >= nb) {
                return;
            }
            try {
                run_batch(b);
            } catch (...) {
                std::lock_guard lock(merge_mutex);
                if (!failed.exchange(true)) {
                    failure = std::current_exception();
                }
                merge_cv.notify_all();
                return;
            }
        }
    };

    const std::size_t n_workers = std::clamp<std::size_t>(options.workers, 1, nb);
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(n_workers);
        for (std::size_t t = 0; t < n_workers; ++t) {
            threads.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    std::vector<TpaResult> results;
    results.reserve(n_points);
    for (std::size_t p = 0; p < n_points; ++p) {
        results.push_back(summarize(merged[p], estimates[p], weights));
    }
    return results;
}

std::vector<TpaResult> delay_response(const SourceSpec& src, const PumpSpec& pump,
                                      const TransitionSpec& transition, const PhaseMask& mask,
                                      std::span<const double> taus, std::size_t realizations,
                                      std::uint64_t seed, std::size_t workers)
{
    const DownConverter source(src);
    std::vector<ScanPoint> points;
    points.reserve(taus.size());
    for (double tau : taus) {
        points.push_back({pump.center_omega, mask.then(PhaseMask::delay(tau)), {}});
    }
    return scan_ensemble(source, pump, transition, points,
                         EnsembleOptions{realizations, seed, workers, 0});
}

}  // namespace dctpa
