#pragma once

#include "dctpa/lineshape.hpp"
#include "dctpa/shaper.hpp"
#include "dctpa/source.hpp"
#include "dctpa/spectral.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace dctpa {

/// Two-photon final state: center Omega_f and FWHM in rad/s.
struct TransitionSpec {
    double omega_f = 0.0;
    double fwhm_omega = 0.0;
    Lineshape lineshape = Lineshape::lorentzian;

    /// `wavelength_nm` is the one-photon-equivalent wavelength of the transition
    /// (pump-resonant 516.65 nm for Rb 5S-4D); fwhm_nm is measured on that scale.
    static TransitionSpec from_nm(double wavelength_nm, double fwhm_nm, Lineshape shape);
    void validate() const;
};

/// Lineshape weights L(Omega_q - Omega_f) * dOmega over the sum-frequency grid
/// of a field grid.
class TpaWeights {
public:
    /// Throws ConfigError when the grid truncates more than 1e-3 of the
    /// lineshape's unit area.
    TpaWeights(const FrequencyGrid& field_grid, const TransitionSpec& transition);

    const FrequencyGrid& sum_grid() const noexcept { return sum_grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t q) const noexcept { return values_[q]; }

private:
    FrequencyGrid sum_grid_;
    std::vector<double> values_;
};

/// Ensemble TPA signal. The coherent term is the lineshape-integrated squared
/// ensemble-mean amplitude, taken in the frame of each realization's pump bin
/// (the sum frequency measured from the sampled pump); the incoherent term is
/// the remainder total - coherent.
struct TpaResult {
    double total = 0.0;
    double coherent = 0.0;
    double incoherent = 0.0;
    double stderr_total = 0.0;
    double stderr_coherent = 0.0;
    double stderr_incoherent = 0.0;
    std::size_t realizations = 0;
    std::size_t batches = 0;
    /// False for a single realization, where incoherent is NaN.
    bool incoherent_defined = false;
    /// <A> at the pump-referenced bin (offset zero). Its phase follows any phase
    /// keying of the signal.
    Complex mean_amplitude{0.0, 0.0};
};

/// Streaming sums over realizations: sum of lineshape-weighted |A|^2, the
/// pump-referenced amplitude sum and the histogram of pump bins.
class TpaAccumulator {
public:
    explicit TpaAccumulator(const FrequencyGrid& field_grid);

    /// `amplitude` lives on the sum grid; pump_bin is pump_sum_bin() of the
    /// realization's pump sample.
    void add(const SpectralField& amplitude, long pump_bin, const TpaWeights& weights);
    void merge(const TpaAccumulator& other);

    std::size_t count() const noexcept { return count_; }
    double total(const TpaWeights& weights) const;
    double coherent(const TpaWeights& weights) const;
    Complex mean_amplitude() const;

private:
    std::size_t n_sum_;  // sum-grid size, 2N
    std::size_t count_ = 0;
    double weighted_power_ = 0.0;
    std::vector<Complex> referenced_;  // index offset + (n_sum_ - 1)
    std::vector<std::uint64_t> pump_hist_;
};

struct BatchEstimate {
    double total = 0.0;
    double coherent = 0.0;
};

/// Point estimates from the merged sums; standard errors by batch means.
TpaResult summarize(const TpaAccumulator& merged, std::span<const BatchEstimate> batches,
                    const TpaWeights& weights);

/// Number of batches used for R realizations when none is requested:
/// min(R, 20).
std::size_t default_batch_count(std::size_t realizations) noexcept;

/// TPA of an explicit ensemble of (already shaped) pairs, split into contiguous
/// batches for the standard errors.
TpaResult tpa_signal(std::span<const DownConvertedPair> pairs, const TransitionSpec& transition,
                     std::size_t batches = 0);

/// One point of an ensemble scan. Masks act on the signal and idler beams
/// respectively; the pump center replaces the base pump's.
struct ScanPoint {
    double pump_center_omega = 0.0;
    PhaseMask signal_mask;
    PhaseMask idler_mask;
};

struct EnsembleOptions {
    std::size_t realizations = 2;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::size_t batches = 0;  // 0: default_batch_count
};

/// Runs every scan point on the same realizations (common random numbers):
/// realization r draws its pump offset and signal from realization_engine(seed, r)
/// once and reuses them at each point. Work is split by batch across workers;
/// batch partials are merged in batch order, so the result does not depend on
/// the worker count.
std::vector<TpaResult> scan_ensemble(const DownConverter& source, const PumpSpec& pump,
                                     const TransitionSpec& transition,
                                     std::span<const ScanPoint> points,
                                     const EnsembleOptions& options);

/// Delay scan: mask followed by Delay(tau) on the signal at each tau.
std::vector<TpaResult> delay_response(const SourceSpec& src, const PumpSpec& pump,
                                      const TransitionSpec& transition, const PhaseMask& mask,
                                      std::span<const double> taus, std::size_t realizations,
                                      std::uint64_t seed, std::size_t workers = 1);

}  // namespace dctpa
