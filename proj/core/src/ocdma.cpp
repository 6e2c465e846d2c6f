#include "dctpa/ocdma.hpp"

#include "dctpa/errors.hpp"
#include "dctpa/shaper.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

namespace dctpa::ocdma {

namespace {

PhaseMask key_mask(std::uint8_t bit, double delay)
{
    PhaseMask m = bit ? PhaseMask::constant(std::numbers::pi) : PhaseMask{};
    return delay != 0.0 ? m.then(PhaseMask::delay(delay)) : m;
}

struct LineSample {
    SpectralField signal;
    SpectralField idler;  // of the selected channel
    double pump_omega = 0.0;
};

LineSample line_sample(const Line& line, std::size_t slot, std::size_t r, std::size_t channel)
{
    const double scale = 1.0 / std::sqrt(static_cast<double>(line.channels.size()));
    std::optional<LineSample> out;
    for (std::size_t c = 0; c < line.channels.size(); ++c) {
        DownConvertedPair pair = line.channels[c].keyed_pair(slot, r);
        if (!out) {
            out.emplace(LineSample{SpectralField(pair.signal.grid()), SpectralField(pair.idler.grid()), 0.0});
        }
        auto dst = out->signal.amplitude();
        const auto src = pair.signal.amplitude();
        for (std::size_t k = 0; k < dst.size(); ++k) {
            dst[k] += src[k] * scale;
        }
        if (c == channel) {
            out->idler = std::move(pair.idler);
            out->pump_omega = pair.pump_omega;
        }
    }
    return std::move(*out);
}

}  // namespace

DownConvertedPair Transmission::keyed_pair(std::size_t slot, std::size_t r) const
{
    Rng rng = realization_engine(seed, slot * channel.realizations_per_bit + r);
    DownConvertedPair pair = source.generate(pump, rng);
    apply_mask_inplace(pair.signal, key_mask(slot_bit(slot), channel.delay));
    return pair;
}

Transmission transmit(std::vector<std::uint8_t> bits, const ChannelSpec& channel,
                      const SourceSpec& src, const PumpSpec& pump, std::uint64_t seed)
{
    if (channel.realizations_per_bit < 2) {
        throw ConfigError("ocdma.realizations_per_bit", "bit period needs >= 2 realizations");
    }
    if (!std::isfinite(channel.delay)) {
        throw ConfigError("ocdma.delay", "channel delay must be finite");
    }
    for (auto b : bits) {
        if (b > 1) {
            throw ConfigError("ocdma.bits", "bits must be 0 or 1");
        }
    }
    src.validate();
    pump.validate();
    src.check_mirror_coverage(pump.center_omega - pump.max_excursion(),
                              pump.center_omega + pump.max_excursion());
    return Transmission{DownConverter(src), pump, channel, std::move(bits), seed};
}

std::size_t Line::slots() const noexcept
{
    return channels.empty() ? 0 : channels.front().slots();
}

std::size_t Line::realizations_per_bit() const noexcept
{
    return channels.empty() ? 0 : channels.front().channel.realizations_per_bit;
}

SpectralField Line::signal(std::size_t slot, std::size_t r) const
{
    return line_sample(*this, slot, r, 0).signal;
}

Line multiplex(std::vector<Transmission> channels)
{
    if (channels.empty()) {
        throw ConfigError("ocdma.channels", "need at least one channel");
    }
    const auto& first = channels.front();
    for (const auto& c : channels) {
        if (!(c.source.grid() == first.source.grid())) {
            throw ConfigError("ocdma.channels", "channels must share one grid");
        }
        if (c.slots() != first.slots() ||
            c.channel.realizations_per_bit != first.channel.realizations_per_bit) {
            throw ConfigError("ocdma.channels",
                              "channels must share bit count and realizations per bit");
        }
    }
    return Line{std::move(channels)};
}

BitstreamResult receive(const Line& line, std::size_t channel, double receiver_delay,
                        const TransitionSpec& transition, std::size_t workers)
{
    BitstreamResult out;
    if (channel >= line.channels.size()) {
        throw ConfigError("ocdma.channel", "no such channel on the line");
    }
    const std::size_t slots = line.slots();
    if (slots == 0) {
        return out;
    }
    const auto& tx = line.channels[channel];
    const auto& grid = tx.source.grid();
    const TpaWeights weights(grid, transition);
    const PhaseMask rx_mask =
        receiver_delay != 0.0 ? PhaseMask::delay(receiver_delay) : PhaseMask{};
    const std::size_t per_bit = line.realizations_per_bit();

    std::vector<Complex> mean_amp(slots);
    std::vector<double> coherent(slots);
    detail::parallel_for(slots, workers, [&](std::size_t s) {
        CrossSpectrum conv(grid);
        SpectralField amplitude(grid.sum_grid());
        TpaAccumulator acc(grid);
        for (std::size_t r = 0; r < per_bit; ++r) {
            LineSample sample = line_sample(line, s, r, channel);
            apply_mask_inplace(sample.idler, rx_mask);
            conv.set_signal(sample.signal);
            conv.set_idler(sample.idler);
            conv.compute(amplitude);
            acc.add(amplitude, pump_sum_bin(grid, sample.pump_omega), weights);
        }
        mean_amp[s] = acc.mean_amplitude();
        coherent[s] = acc.coherent(weights);
    });

    const Complex pilot = mean_amp[0];
    const double pilot_norm = std::norm(pilot);
    for (std::size_t s = 1; s < slots; ++s) {
        const double stat = pilot_norm > 0.0 ? (mean_amp[s] * std::conj(pilot)).real() / pilot_norm
                                             : 0.0;
        const std::uint8_t decision = stat < 0.0 ? 1 : 0;
        const std::uint8_t truth = tx.slot_bit(s);
        out.statistic.push_back(stat);
        out.decoded.push_back(decision);
        out.truth.push_back(truth);
        out.coherent.push_back(coherent[s]);
        out.bit_errors += decision != truth ? 1 : 0;
    }
    return out;
}

EavesdropResult eavesdrop(const Line& line, std::size_t channel, std::uint64_t reference_seed,
                          std::size_t workers)
{
    EavesdropResult out;
    if (channel >= line.channels.size()) {
        throw ConfigError("ocdma.channel", "no such channel on the line");
    }
    const std::size_t slots = line.slots();
    if (slots < 2) {
        return out;
    }
    const auto& tx = line.channels[channel];
    const auto& grid = tx.source.grid();
    const std::size_t per_bit = line.realizations_per_bit();
    const std::size_t probe = *grid.nearest_bin(tx.source.spec().center_omega);

    Line reference = line;
    for (auto& c : reference.channels) {
        std::fill(c.bits.begin(), c.bits.end(), std::uint8_t{0});
        c.seed ^= reference_seed;
    }

    std::vector<double> flux(slots);
    std::vector<std::vector<Complex>> mean_field(slots);
    std::vector<double> keyed(slots * per_bit);
    std::vector<double> unkeyed(slots * per_bit);
    detail::parallel_for(slots, workers, [&](std::size_t s) {
        std::vector<Complex> m(grid.size());
        double f = 0.0;
        for (std::size_t r = 0; r < per_bit; ++r) {
            const SpectralField e = line.signal(s, r);
            f += e.total_flux();
            const auto a = e.amplitude();
            for (std::size_t k = 0; k < a.size(); ++k) {
                m[k] += a[k];
            }
            keyed[s * per_bit + r] = std::norm(a[probe]);
            unkeyed[s * per_bit + r] = std::norm(reference.signal(s, r)[probe]);
        }
        flux[s] = f / static_cast<double>(per_bit);
        mean_field[s] = std::move(m);
    });

    std::size_t intensity_hits = 0;
    std::size_t phase_hits = 0;
    for (std::size_t s = 1; s < slots; ++s) {
        const std::uint8_t truth = tx.slot_bit(s);
        intensity_hits += (flux[s] > flux[0] ? 1 : 0) == truth ? 1 : 0;
        Complex proj{0.0, 0.0};
        for (std::size_t k = 0; k < grid.size(); ++k) {
            proj += mean_field[s][k] * std::conj(mean_field[0][k]);
        }
        phase_hits += (proj.real() < 0.0 ? 1 : 0) == truth ? 1 : 0;
    }
    out.bits = slots - 1;
    out.intensity_accuracy = static_cast<double>(intensity_hits) / static_cast<double>(out.bits);
    out.phase_accuracy = static_cast<double>(phase_hits) / static_cast<double>(out.bits);
    // Payload slots only: the pilot is unkeyed on both lines.
    out.intensity_ks = stats::ks_two_sample(
        std::span<const double>(keyed).subspan(per_bit),
        std::span<const double>(unkeyed).subspan(per_bit));
    return out;
}

std::vector<std::uint8_t> parse_bits(std::istream& in)
{
    std::vector<std::uint8_t> bits;
    char ch = 0;
    while (in.get(ch)) {
        if (ch == '0' || ch == '1') {
            bits.push_back(static_cast<std::uint8_t>(ch - '0'));
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            throw ConfigError("ocdma.bits", std::string("unexpected character '") + ch +
                                                "' in bitstream (expected 0/1)");
        }
    }
    return bits;
}

std::vector<std::uint8_t> read_bits(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("ocdma.bits", "cannot open bit file '" + path.string() + "'");
    }
    return parse_bits(in);
}

void write_bits(std::ostream& out, const std::vector<std::uint8_t>& bits)
{
    for (auto b : bits) {
        out << (b ? '1' : '0');
    }
    out << '\n';
}

void write_csv(std::ostream& out, const BitstreamResult& result)
{
    out << "bit_index,statistic,decision,truth\n";
    char buf[64];
    for (std::size_t i = 0; i < result.decoded.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", result.statistic[i]);
        out << i << ',' << buf << ',' << int(result.decoded[i]) << ',' << int(result.truth[i])
            << '\n';
    }
}

}  // namespace dctpa::ocdma
