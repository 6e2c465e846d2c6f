#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace dctpa {

using Complex = std::complex<double>;

/// Uniform angular-frequency grid. Bin k sits at
/// center - span/2 + (k + 0.5) * bin_width.
class FrequencyGrid {
public:
    /// Throws ConfigError unless n_bins is a power of two >= 64 and every bin
    /// frequency is strictly positive.
    FrequencyGrid(double center_omega, double span_omega, std::size_t n_bins);

    double center() const noexcept { return center_; }
    double span() const noexcept { return span_; }
    std::size_t size() const noexcept { return n_bins_; }
    double bin_width() const noexcept { return span_ / static_cast<double>(n_bins_); }

    double omega(std::size_t k) const noexcept
    {
        return center_ - 0.5 * span_ + (static_cast<double>(k) + 0.5) * bin_width();
    }
    double lower_edge() const noexcept { return center_ - 0.5 * span_; }
    double upper_edge() const noexcept { return center_ + 0.5 * span_; }

    /// Nearest bin to omega, or nullopt when omega falls outside the grid.
    std::optional<std::size_t> nearest_bin(double omega) const noexcept;

    /// Grid of the pairwise sums omega_k + omega_j: 2 * n_bins bins of the same
    /// width, bin q at omega(0) * 2 + q * bin_width (the last bin is padding).
    FrequencyGrid sum_grid() const;

    /// Time step and window of the conjugate temporal grid.
    double time_step() const noexcept;
    double time_window() const noexcept;

    friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

private:
    double center_;
    double span_;
    std::size_t n_bins_;
};

FrequencyGrid make_grid(double center_omega, double span_omega, std::size_t n_bins);

/// Complex spectral amplitude per bin, in sqrt(photon flux per unit angular
/// frequency), so that sum |E_k|^2 * bin_width is the mean photon flux.
class SpectralField {
public:
    explicit SpectralField(FrequencyGrid grid);
    SpectralField(FrequencyGrid grid, std::vector<Complex> amplitude);

    const FrequencyGrid& grid() const noexcept { return grid_; }
    std::span<const Complex> amplitude() const noexcept { return amplitude_; }
    std::span<Complex> amplitude() noexcept { return amplitude_; }
    std::size_t size() const noexcept { return amplitude_.size(); }

    Complex operator[](std::size_t k) const noexcept { return amplitude_[k]; }
    Complex& operator[](std::size_t k) noexcept { return amplitude_[k]; }

    double total_flux() const noexcept;

    SpectralField& operator*=(Complex factor) noexcept;

private:
    FrequencyGrid grid_;
    std::vector<Complex> amplitude_;
};

/// Time-domain view of a spectral field:
///   e(t_j) = bin_width / sqrt(2 pi) * sum_k E_k exp(-i omega_k t_j),
/// t_j = (j - N/2) * dt, dt = 2 pi / span. The carrier is kept, so
/// sum |e_j|^2 dt equals the spectral total flux.
struct TemporalField {
    FrequencyGrid grid;
    std::vector<Complex> amplitude;

    double time_step() const noexcept { return grid.time_step(); }
    double time(std::size_t j) const noexcept;
    double energy() const noexcept;
};

TemporalField to_time(const SpectralField& field);

/// Inverse of to_time. Throws ConfigError when the temporal field was not
/// produced on `grid`.
SpectralField to_freq(const TemporalField& field, const FrequencyGrid& grid);

/// Two-field TPA amplitude A(Omega) = integral E_s(omega) E_i(Omega - omega) d omega
/// as a discrete linear convolution scaled by bin_width, on signal.grid().sum_grid().
SpectralField cross_spectrum(const SpectralField& signal, const SpectralField& idler);

/// Reusable cross_spectrum evaluator that caches the transform of whichever side
/// did not change. Not thread-safe; use one instance per worker.
class CrossSpectrum {
public:
    explicit CrossSpectrum(const FrequencyGrid& grid);
    ~CrossSpectrum();
    CrossSpectrum(CrossSpectrum&&) noexcept;
    CrossSpectrum& operator=(CrossSpectrum&&) noexcept;

    void set_signal(const SpectralField& signal);
    void set_idler(const SpectralField& idler);

    /// Writes A(Omega) for the currently loaded pair into `out`, which must live
    /// on grid().sum_grid().
    void compute(SpectralField& out);
    SpectralField compute();

    const FrequencyGrid& grid() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace dctpa
