#pragma once

#include "dctpa/detector.hpp"
#include "dctpa/source.hpp"
#include "dctpa/stats.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

// Delay-keyed code-division link: bits are phase keys (0 / pi) on the signal
// beam; only the matched idler at the matched delay recovers them.
namespace dctpa::ocdma {

struct ChannelSpec {
    double delay = 0.0;                    // s, applied to the signal beam
    std::size_t realizations_per_bit = 64;
};

/// One transmitter. Slot 0 is a known 0-bit pilot, followed by the payload;
/// an empty payload gives no slots at all. Slot s, realization r draws from
/// realization_engine(seed, s * realizations_per_bit + r).
struct Transmission {
    DownConverter source;
    PumpSpec pump;
    ChannelSpec channel;
    std::vector<std::uint8_t> bits;  // payload
    std::uint64_t seed = 0;

    std::size_t slots() const noexcept { return bits.empty() ? 0 : bits.size() + 1; }
    std::uint8_t slot_bit(std::size_t slot) const { return slot == 0 ? 0 : bits.at(slot - 1); }

    /// Pair for (slot, r): the signal carries Constant(pi * bit) then
    /// Delay(channel.delay); the idler stays unshaped at the receiver.
    DownConvertedPair keyed_pair(std::size_t slot, std::size_t r) const;
};

/// Throws ConfigError for bit values other than 0/1 or fewer than two
/// realizations per bit.
Transmission transmit(std::vector<std::uint8_t> bits, const ChannelSpec& channel,
                      const SourceSpec& src, const PumpSpec& pump, std::uint64_t seed);

/// Channels sharing one line; the line field is sum_c signal_c / sqrt(C).
struct Line {
    std::vector<Transmission> channels;

    std::size_t slots() const noexcept;
    std::size_t realizations_per_bit() const noexcept;
    SpectralField signal(std::size_t slot, std::size_t r) const;
};

/// Throws ConfigError unless all channels share grid, slot count and
/// realizations per bit.
Line multiplex(std::vector<Transmission> channels);

struct BitstreamResult {
    std::vector<std::uint8_t> decoded;
    std::vector<double> statistic;  // Re(a_b conj(a_pilot)) / |a_pilot|^2
    std::vector<std::uint8_t> truth;
    std::vector<double> coherent;   // per-slot coherent TPA estimate, payload slots
    std::size_t bit_errors = 0;

    double bit_error_rate() const noexcept
    {
        return decoded.empty() ? 0.0
                               : static_cast<double>(bit_errors) / static_cast<double>(decoded.size());
    }
};

/// Decodes `channel` of the line with that channel's idler delayed by
/// receiver_delay. Each slot's mean TPA amplitude at the pump bin is compared
/// with the pilot's; statistics below the midpoint 0 decode as 1.
BitstreamResult receive(const Line& line, std::size_t channel, double receiver_delay,
                        const TransitionSpec& transition, std::size_t workers = 1);

/// Signal-only interception: estimators that see the line field but no idler.
struct EavesdropResult {
    double intensity_accuracy = 0.0;  // slot flux above pilot flux -> 1
    double phase_accuracy = 0.0;      // mean field projected on the pilot's -> sign
    stats::KsResult intensity_ks;     // keyed vs independent unkeyed line, one bin
    std::size_t bits = 0;
};

EavesdropResult eavesdrop(const Line& line, std::size_t channel, std::uint64_t reference_seed,
                          std::size_t workers = 1);

/// Text bitstreams of '0' / '1' characters; whitespace is ignored.
std::vector<std::uint8_t> parse_bits(std::istream& in);
std::vector<std::uint8_t> read_bits(const std::filesystem::path& path);
void write_bits(std::ostream& out, const std::vector<std::uint8_t>& bits);

/// CSV with header bit_index,statistic,decision,truth.
void write_csv(std::ostream& out, const BitstreamResult& result);

}  // namespace dctpa::ocdma
