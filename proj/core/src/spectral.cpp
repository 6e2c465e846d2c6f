#include "dctpa/spectral.hpp"

#include "dctpa/errors.hpp"
#include "dctpa/units.hpp"
#include "fft.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace dctpa {

using detail::AlignedBuffer;
using detail::FftDirection;

FrequencyGrid::FrequencyGrid(double center_omega, double span_omega, std::size_t n_bins)
    : center_(center_omega), span_(span_omega), n_bins_(n_bins)
{
    if (n_bins < 64 || !std::has_single_bit(n_bins)) {
        std::ostringstream msg;
        msg << "n_bins must be a power of two and >= 64 (got " << n_bins << ")";
        throw ConfigError("grid.n_bins", msg.str());
    }
    if (!std::isfinite(center_omega) || !std::isfinite(span_omega) || !(span_omega > 0.0)) {
        throw ConfigError("grid.span", "span must be finite and positive");
    }
    if (!(center_omega - 0.5 * span_omega > 0.0)) {
        throw ConfigError("grid", "grid reaches non-positive frequencies (center - span/2 <= 0)");
    }
}

std::optional<std::size_t> FrequencyGrid::nearest_bin(double omega) const noexcept
{
    const double x = (omega - lower_edge()) / bin_width() - 0.5;
    const double k = std::round(x);
    if (!(k >= 0.0) || k > static_cast<double>(n_bins_ - 1)) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(k);
}

FrequencyGrid FrequencyGrid::sum_grid() const
{
    return FrequencyGrid(2.0 * center_ + 0.5 * bin_width(), 2.0 * span_, 2 * n_bins_);
}

double FrequencyGrid::time_step() const noexcept
{
    return units::two_pi / span_;
}

double FrequencyGrid::time_window() const noexcept
{
    return units::two_pi / bin_width();
}

FrequencyGrid make_grid(double center_omega, double span_omega, std::size_t n_bins)
{
    return FrequencyGrid(center_omega, span_omega, n_bins);
}

SpectralField::SpectralField(FrequencyGrid grid)
    : grid_(grid), amplitude_(grid.size(), Complex{0.0, 0.0})
{
}

SpectralField::SpectralField(FrequencyGrid grid, std::vector<Complex> amplitude)
    : grid_(grid), amplitude_(std::move(amplitude))
{
    if (amplitude_.size() != grid_.size()) {
        throw ConfigError("amplitude length does not match grid size");
    }
}

double SpectralField::total_flux() const noexcept
{
    double sum = 0.0;
    for (const auto& a : amplitude_) {
        sum += std::norm(a);
    }
    return sum * grid_.bin_width();
}

SpectralField& SpectralField::operator*=(Complex factor) noexcept
{
    for (auto& a : amplitude_) {
        a *= factor;
    }
    return *this;
}

double TemporalField::time(std::size_t j) const noexcept
{
    const auto n = static_cast<double>(grid.size());
    return (static_cast<double>(j) - 0.5 * n) * grid.time_step();
}

double TemporalField::energy() const noexcept
{
    double sum = 0.0;
    for (const auto& a : amplitude) {
        sum += std::norm(a);
    }
    return sum * grid.time_step();
}

namespace {

// exp(-i * omega_0 * t_j) with the phase reduced before the trig call.
Complex carrier(double omega0, double t, double sign)
{
    return std::polar(1.0, sign * std::fmod(omega0 * t, units::two_pi));
}

}  // namespace

TemporalField to_time(const SpectralField& field)
{
    const auto& grid = field.grid();
    const std::size_t n = grid.size();
    AlignedBuffer buf(n);
    // t_0 = -N/2 dt, so exp(-i k dw t_0) = (-1)^k.
    for (std::size_t k = 0; k < n; ++k) {
        buf[k] = (k % 2 == 0) ? field[k] : -field[k];
    }
    detail::fft_inplace(buf, FftDirection::forward);

    TemporalField out{grid, std::vector<Complex>(n)};
    const double scale = grid.bin_width() / std::sqrt(units::two_pi);
    const double omega0 = grid.omega(0);
    for (std::size_t j = 0; j < n; ++j) {
        out.amplitude[j] = buf[j] * carrier(omega0, out.time(j), -1.0) * scale;
    }
    return out;
}

SpectralField to_freq(const TemporalField& field, const FrequencyGrid& grid)
{
    if (!(field.grid == grid) || field.amplitude.size() != grid.size()) {
        throw ConfigError("to_freq: temporal field does not belong to this frequency grid");
    }
    const std::size_t n = grid.size();
    AlignedBuffer buf(n);
    const double omega0 = grid.omega(0);
    for (std::size_t j = 0; j < n; ++j) {
        buf[j] = field.amplitude[j] * carrier(omega0, field.time(j), +1.0);
    }
    detail::fft_inplace(buf, FftDirection::backward);

    SpectralField out(grid);
    const double scale = grid.time_step() / std::sqrt(units::two_pi);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = ((k % 2 == 0) ? buf[k] : -buf[k]) * scale;
    }
    return out;
}

struct CrossSpectrum::Impl {
    explicit Impl(const FrequencyGrid& g)
        : grid(g), sum_grid(g.sum_grid()), signal(2 * g.size()), idler(2 * g.size()),
          product(2 * g.size())
    {
    }

    void load(AlignedBuffer& buf, const SpectralField& field)
    {
        if (!(field.grid() == grid)) {
            throw ConfigError("cross_spectrum: signal and idler must share one grid");
        }
        const std::size_t n = grid.size();
        for (std::size_t k = 0; k < n; ++k) {
            buf[k] = field[k];
        }
        for (std::size_t k = n; k < 2 * n; ++k) {
            buf[k] = {0.0, 0.0};
        }
        detail::fft_inplace(buf, FftDirection::forward);
    }

    FrequencyGrid grid;
    FrequencyGrid sum_grid;
    AlignedBuffer signal;
    AlignedBuffer idler;
    AlignedBuffer product;
    bool has_signal = false;
    bool has_idler = false;
};

CrossSpectrum::CrossSpectrum(const FrequencyGrid& grid) : impl_(std::make_unique<Impl>(grid)) {}
CrossSpectrum::~CrossSpectrum() = default;
CrossSpectrum::CrossSpectrum(CrossSpectrum&&) noexcept = default;
CrossSpectrum& CrossSpectrum::operator=(CrossSpectrum&&) noexcept = default;

const FrequencyGrid& CrossSpectrum::grid() const noexcept
{
    return impl_->grid;
}

void CrossSpectrum::set_signal(const SpectralField& signal)
{
    impl_->load(impl_->signal, signal);
    impl_->has_signal = true;
}

void CrossSpectrum::set_idler(const SpectralField& idler)
{
    impl_->load(impl_->idler, idler);
    impl_->has_idler = true;
}

void CrossSpectrum::compute(SpectralField& out)
{
    auto& d = *impl_;
    if (!d.has_signal || !d.has_idler) {
        throw ConfigError("cross_spectrum: signal and idler must both be loaded");
    }
    if (!(out.grid() == d.sum_grid)) {
        throw ConfigError("cross_spectrum: output must live on the sum-frequency grid");
    }
    const std::size_t m = d.product.size();
    for (std::size_t k = 0; k < m; ++k) {
        d.product[k] = d.signal[k] * d.idler[k];
    }
    detail::fft_inplace(d.product, FftDirection::backward);
    const double scale = d.grid.bin_width() / static_cast<double>(m);
    for (std::size_t q = 0; q + 1 < m; ++q) {
        out[q] = d.product[q] * scale;
    }
    // k + j never reaches 2N - 1; the padding bin is exactly empty.
    out[m - 1] = {0.0, 0.0};
}

SpectralField CrossSpectrum::compute()
{
    SpectralField out(impl_->sum_grid);
    compute(out);
    return out;
}

SpectralField cross_spectrum(const SpectralField& signal, const SpectralField& idler)
{
    if (!(signal.grid() == idler.grid())) {
        throw ConfigError("cross_spectrum: signal and idler must share one grid");
    }
    CrossSpectrum conv(signal.grid());
    conv.set_signal(signal);
    conv.set_idler(idler);
    return conv.compute();
}

}  // namespace dctpa
