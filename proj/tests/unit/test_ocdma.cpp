#include "dctpa/errors.hpp"
#include "dctpa/ocdma.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace dctpa;
namespace t = dctpa::testing;

namespace {

struct Link {
    FrequencyGrid grid = t::grid(1024);
    SourceSpec src = t::source(grid);
    PumpSpec pump = t::pump_bins(grid, 3.0);
    TransitionSpec transition = t::transition_bins(grid, 5.0, Lineshape::gaussian);
};

}  // namespace

TEST(Ocdma, EmptyPayloadHasNoSlots)
{
    const Link l;
    const auto tx = ocdma::transmit({}, {0.0, 4}, l.src, l.pump, 1);
    EXPECT_EQ(tx.slots(), 0u);
    const auto rx = ocdma::receive(ocdma::multiplex({tx}), 0, 0.0, l.transition);
    EXPECT_TRUE(rx.decoded.empty());
}

TEST(Ocdma, RejectsBadBitsAndShortBitPeriod)
{
    const Link l;
    EXPECT_THROW(ocdma::transmit({0, 2}, {0.0, 4}, l.src, l.pump, 1), ConfigError);
    EXPECT_THROW(ocdma::transmit({0, 1}, {0.0, 1}, l.src, l.pump, 1), ConfigError);
}

TEST(Ocdma, AllZeroKeyLeavesTheSourceUntouched)
{
    const Link l;
    const auto tx = ocdma::transmit({0, 0}, {0.0, 4}, l.src, l.pump, 3);
    const DownConverter dc(l.src);
    auto rng = realization_engine(3, 1 * 4 + 2);
    const auto plain = dc.generate(l.pump, rng);
    const auto keyed = tx.keyed_pair(1, 2);
    for (std::size_t k = 0; k < l.grid.size(); ++k) {
        ASSERT_EQ(plain.signal[k], keyed.signal[k]);
    }
}

TEST(Ocdma, OneBitFlipsTheMeanAmplitude)
{
    const auto g = t::grid(64);
    const auto src = t::source(g, 60.0);
    const auto pump = t::pump_bins(g, 1.0);
    const auto tr = t::transition_bins(g, 4.0, Lineshape::gaussian);
    const auto zero = ocdma::transmit({0}, {0.0, 8}, src, pump, 11);
    const auto one = ocdma::transmit({1}, {0.0, 8}, src, pump, 11);
    const TpaWeights w(g, tr);
    TpaAccumulator a0(g);
    TpaAccumulator a1(g);
    for (std::size_t r = 0; r < 8; ++r) {
        const auto p0 = zero.keyed_pair(1, r);
        const auto p1 = one.keyed_pair(1, r);
        a0.add(cross_spectrum(p0.signal, p0.idler), pump_sum_bin(g, p0.pump_omega), w);
        a1.add(cross_spectrum(p1.signal, p1.idler), pump_sum_bin(g, p1.pump_omega), w);
    }
    EXPECT_NEAR(std::abs(a0.mean_amplitude() + a1.mean_amplitude()), 0.0,
                1e-12 * std::abs(a0.mean_amplitude()));
}

TEST(Ocdma, MatchedReceiverDecodesAndWrongDelayDoesNot)
{
    const Link l;
    std::vector<std::uint8_t> bits;
    for (int i = 0; i < 24; ++i) {
        bits.push_back(static_cast<std::uint8_t>((i * 7 + 3) % 5 < 2));
    }
    const auto line = ocdma::multiplex({ocdma::transmit(bits, {30e-15, 12}, l.src, l.pump, 21)});
    const auto rx = ocdma::receive(line, 0, 30e-15, l.transition, 2);
    EXPECT_EQ(rx.decoded.size(), bits.size());
    EXPECT_EQ(rx.bit_errors, 0u);
    EXPECT_EQ(rx.truth, bits);
    const auto wrong = ocdma::receive(line, 0, 230e-15, l.transition);
    double worst = 0.0;
    for (double s : rx.statistic) {
        worst = std::max(worst, std::abs(std::abs(s) - 1.0));
    }
    EXPECT_LT(worst, 0.2);
    EXPECT_GT(wrong.bit_errors, 0u);
}

TEST(Ocdma, ChannelsAreOrthogonal)
{
    const Link l;
    const std::vector<std::uint8_t> bits{1, 0, 1, 1, 0, 0, 1, 0};
    const std::vector<std::uint8_t> other{0, 0, 0, 0, 0, 0, 0, 0};
    const std::vector<std::uint8_t> noisy{1, 1, 0, 1, 0, 1, 1, 1};
    auto decode = [&](const std::vector<std::uint8_t>& second) {
        const auto line = ocdma::multiplex({ocdma::transmit(bits, {0.0, 16}, l.src, l.pump, 5),
                                            ocdma::transmit(second, {300e-15, 16}, l.src, l.pump, 6)});
        return ocdma::receive(line, 0, 0.0, l.transition);
    };
    const auto a = decode(other);
    const auto b = decode(noisy);
    EXPECT_EQ(a.bit_errors, 0u);
    EXPECT_EQ(b.bit_errors, 0u);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        EXPECT_NEAR(a.statistic[i], b.statistic[i], 0.2);
    }
}

TEST(Ocdma, MultiplexRequiresMatchingChannels)
{
    const Link l;
    EXPECT_THROW(ocdma::multiplex({}), ConfigError);
    EXPECT_THROW(ocdma::multiplex({ocdma::transmit({0, 1}, {0.0, 4}, l.src, l.pump, 1),
                                   ocdma::transmit({0}, {0.0, 4}, l.src, l.pump, 2)}),
                 ConfigError);
}

TEST(Ocdma, EavesdropperSeesNoKey)
{
    const Link l;
    std::vector<std::uint8_t> bits(40);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        bits[i] = static_cast<std::uint8_t>(i % 2);
    }
    const auto line = ocdma::multiplex({ocdma::transmit(bits, {0.0, 16}, l.src, l.pump, 8)});
    const auto eve = ocdma::eavesdrop(line, 0, 99);
    EXPECT_EQ(eve.bits, bits.size());
    // Binomial(40, 1/2): 3 sigma is 0.237.
    EXPECT_LT(std::abs(eve.intensity_accuracy - 0.5), 0.237);
    EXPECT_LT(std::abs(eve.phase_accuracy - 0.5), 0.237);
    EXPECT_GT(eve.intensity_ks.p_value, 0.01);
}

TEST(Ocdma, BitAndCsvFormats)
{
    std::istringstream in("0101\n 11 0\n");
    const auto bits = ocdma::parse_bits(in);
    EXPECT_EQ(bits, (std::vector<std::uint8_t>{0, 1, 0, 1, 1, 1, 0}));
    std::ostringstream out;
    ocdma::write_bits(out, bits);
    EXPECT_EQ(out.str(), "0101110\n");
    std::istringstream bad("01x");
    EXPECT_THROW(ocdma::parse_bits(bad), ConfigError);

    ocdma::BitstreamResult r;
    r.decoded = {1, 0};
    r.truth = {1, 1};
    r.statistic = {-0.5, 0.25};
    std::ostringstream csv;
    ocdma::write_csv(csv, r);
    EXPECT_EQ(csv.str(), "bit_index,statistic,decision,truth\n0,-0.5,1,1\n1,0.25,0,1\n");
}
