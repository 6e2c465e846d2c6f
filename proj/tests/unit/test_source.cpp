#include "dctpa/errors.hpp"
#include "dctpa/source.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dctpa;
namespace t = dctpa::testing;

TEST(Rng, StreamsDependOnlyOnSeedAndIndex)
{
    auto a = realization_engine(42, 7);
    auto b = realization_engine(42, 7);
    auto c = realization_engine(42, 8);
    auto d = realization_engine(43, 7);
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
    EXPECT_NE(va, d());
}

TEST(Pump, TruncatedLorentzianQuantiles)
{
    const PumpSpec pump{1.0e15, 1.0e11, Lineshape::lorentzian};
    auto rng = realization_engine(1, 0);
    const int n = 100000;
    int inside = 0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_pump(pump, rng) - pump.center_omega;
        ASSERT_LE(std::abs(x), pump.max_excursion());
        inside += std::abs(x) <= 0.5 * pump.fwhm_omega ? 1 : 0;
    }
    // Mass within +-fwhm/2 of a Lorentzian truncated at +-5 fwhm.
    EXPECT_NEAR(static_cast<double>(inside) / n, std::atan(1.0) / std::atan(10.0), 0.006);
}

TEST(Pump, GaussianQuantiles)
{
    const PumpSpec pump{1.0e15, 1.0e11, Lineshape::gaussian};
    auto rng = realization_engine(2, 0);
    const int n = 100000;
    int inside = 0;
    for (int i = 0; i < n; ++i) {
        inside += std::abs(sample_pump(pump, rng) - pump.center_omega) <= 0.5 * pump.fwhm_omega;
    }
    EXPECT_NEAR(static_cast<double>(inside) / n, std::erf(std::sqrt(std::log(2.0))), 0.006);
}

TEST(Pump, ShiftingTheCenterShiftsEveryDraw)
{
    const PumpSpec a{1.0e15, 1.0e11, Lineshape::lorentzian};
    PumpSpec b = a;
    b.center_omega += 3.0e11;
    auto ra = realization_engine(9, 1);
    auto rb = realization_engine(9, 1);
    for (int i = 0; i < 100; ++i) {
        EXPECT_NEAR(sample_pump(b, rb) - sample_pump(a, ra), 3.0e11, 1.0);
    }
}

TEST(Source, DensityCalibratedToPhotonsPerMode)
{
    const auto g = t::grid(4096);
    const auto src = t::source(g, 100.0, 250.0);
    const auto density = spectral_density(src);
    double sum = 0.0;
    int count = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (std::abs(g.omega(k) - src.center_omega) <= 0.5 * src.fwhm_omega) {
            sum += 2.0 * M_PI * density[k];
            ++count;
        }
    }
    EXPECT_NEAR(sum / count, 250.0, 1e-9);
}

TEST(Source, RejectsGridThatMissesTheTails)
{
    const FrequencyGrid narrow(units::omega_from_nm(1033.3), units::omega_width_from_nm(200.0, 1033.3),
                               1024);
    try {
        t::source(narrow).validate();
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("grid does not cover"), std::string::npos);
    }
    EXPECT_NO_THROW(t::source(t::grid(1024)).validate());
}

TEST(Source, IdlerIsExactConjugate)
{
    const auto g = t::grid(1024);
    const DownConverter dc(t::source(g));
    auto rng = realization_engine(5, 0);
    const auto pump = t::pump_bins(g, 3.0);
    const auto pair = dc.generate(pump, rng);
    const long m = pump_sum_bin(g, pair.pump_omega);
    double worst = 0.0;
    double scale = 0.0;
    for (long k = 0; k < static_cast<long>(g.size()); ++k) {
        const long j = m - k;
        if (j < 0 || j >= static_cast<long>(g.size())) {
            continue;
        }
        const auto ks = static_cast<std::size_t>(k);
        const auto js = static_cast<std::size_t>(j);
        const Complex lhs = std::sqrt(g.omega(js)) * pair.signal[ks];
        const Complex rhs = std::sqrt(g.omega(ks)) * std::conj(pair.idler[js]);
        worst = std::max(worst, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(lhs));
    }
    EXPECT_LE(worst, 1e-12 * scale);
}

TEST(Source, GenerateDrawsPumpThenSignal)
{
    const auto g = t::grid(256);
    const DownConverter dc(t::source(g));
    const auto pump = t::pump_bins(g, 2.0);
    auto r1 = realization_engine(3, 4);
    auto r2 = realization_engine(3, 4);
    const auto pair = dc.generate(pump, r1);
    const double w = sample_pump(pump, r2);
    const auto signal = dc.draw_signal(r2);
    EXPECT_EQ(pair.pump_omega, w);
    for (std::size_t k = 0; k < g.size(); ++k) {
        EXPECT_EQ(pair.signal[k], signal[k]);
    }
}

TEST(Source, OffGridPumpLeaksEnvelope)
{
    const auto g = t::grid(256);
    const DownConverter dc(t::source(g));
    const auto signal = SpectralField(g, std::vector<Complex>(g.size(), Complex(1.0, 0.0)));
    try {
        (void)dc.conjugate_idler(signal, 2.0 * g.center() + 0.3 * g.span());
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("leaks off-grid"), std::string::npos);
    }
}

TEST(Source, SignalIsThermal)
{
    const auto g = t::grid(256);
    const DownConverter dc(t::source(g));
    const std::size_t probe = g.size() / 2;
    const int r = 4000;
    double power = 0.0;
    Complex mean{};
    for (int i = 0; i < r; ++i) {
        auto rng = realization_engine(8, static_cast<std::uint64_t>(i));
        const auto s = dc.draw_signal(rng);
        power += std::norm(s[probe]);
        mean += s[probe];
    }
    const double d = dc.density()[probe];
    EXPECT_NEAR(power / r, d, 4.0 * d / std::sqrt(r));
    // <E> of a circular Gaussian: |mean| ~ sqrt(d / R).
    EXPECT_LT(std::abs(mean / static_cast<double>(r)), 4.0 * std::sqrt(d / r));
}

TEST(Source, TransformLimitedPairIsRealSqrtDensity)
{
    const auto g = t::grid(256);
    const DownConverter dc(t::source(g));
    const auto pair = dc.transform_limited(2.0 * g.center());
    for (std::size_t k = 0; k < g.size(); ++k) {
        EXPECT_EQ(pair.signal[k], Complex(std::sqrt(dc.density()[k]), 0.0));
    }
}
