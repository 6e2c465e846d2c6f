// Desk-scale acceptance run: one [PASS]/[FAIL] line per criterion.
#include "dctpa/analytic.hpp"
#include "dctpa/harness.hpp"
#include "dctpa/stats.hpp"
#include "dctpa/units.hpp"
#include "test_util.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace dctpa;
namespace t = dctpa::testing;

namespace {

// Pinned tolerances.
constexpr double kDelayShapeTol = 0.05;       // of peak
constexpr double kDelayFwhmTol = 0.10;        // relative
constexpr double kDelayRuntimeLimit = 300.0;  // s
constexpr double kFlatRelTol = 0.02;
constexpr double kFlatSigmas = 3.0;
constexpr double kSelectivityFwhmTol = 0.20;  // relative
constexpr double kSelectivityEdgeRatio = 0.01;
constexpr double kRatioTarget = 50.0;
constexpr double kRatioSigmas = 3.0;
constexpr double kControlMinTol = 0.02;       // of maximum, plus 3 stderr
constexpr double kControlMaxTol = 0.03;       // relative to phi = 0
constexpr double kControlRmsTol = 0.05;
constexpr double kDarkPulseTol = 0.05;        // of peak
constexpr double kBruteRelTol = 1e-9;
constexpr std::size_t kStatsRealizations = 10000;
constexpr std::uint64_t kStatsSeed = 20240601;
constexpr double kKsAlpha = 0.01;
constexpr double kMeanFieldSigmas = 3.0;
constexpr double kEveSigmas = 3.0;
constexpr double kWrongDelayP = 0.05;

int failures = 0;

void report(int id, bool passed, const std::string& what, const std::string& detail)
{
    std::cout << (passed ? "[PASS] " : "[FAIL] ") << id << ". " << what << ": " << detail
              << std::endl;
    failures += passed ? 0 : 1;
}

std::string fmt(double v, int precision = 4)
{
    std::ostringstream s;
    s.precision(precision);
    s << v;
    return s.str();
}

std::vector<double> column(const ScanResult& r, double ScanRow::*field)
{
    std::vector<double> out;
    for (const auto& row : r.rows) {
        out.push_back(row.*field);
    }
    return out;
}

std::string csv_of(const ScanResult& r)
{
    std::ostringstream out;
    write_scan_csv(out, r);
    return out.str();
}

std::size_t nearest_row(const ScanResult& r, double value)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
        if (std::abs(r.rows[i].axis_value - value) < std::abs(r.rows[best].axis_value - value)) {
            best = i;
        }
    }
    return best;
}

struct Flatness {
    double range = 0.0;
    double allowed = 0.0;
};

Flatness flatness(const ScanResult& r)
{
    double lo = r.rows.front().incoherent;
    double hi = lo;
    double mean = 0.0;
    double sigma = 0.0;
    for (const auto& row : r.rows) {
        lo = std::min(lo, row.incoherent);
        hi = std::max(hi, row.incoherent);
        mean += row.incoherent;
        sigma = std::max(sigma, row.stderr_incoherent);
    }
    mean /= static_cast<double>(r.rows.size());
    return {hi - lo, kFlatRelTol * mean + kFlatSigmas * sigma};
}

struct Timed {
    ScanResult result;
    double seconds = 0.0;
};

Timed run_preset(const std::string& name)
{
    RunConfig cfg = preset_config(name);
    const auto start = std::chrono::steady_clock::now();
    Timed out{run_scan(cfg), 0.0};
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "  ran " << name << ": " << out.result.rows.size() << " points, R = "
              << out.result.realizations << ", " << fmt(out.seconds, 3) << " s" << std::endl;
    return out;
}

void criterion_delay(const Timed& fig2a)
{
    const auto& r = fig2a.result;
    const auto taus = column(r, &ScanRow::axis_value);
    const auto coherent = column(r, &ScanRow::coherent);
    const auto oracle = column(r, &ScanRow::oracle);
    const double scale = fit_scale(coherent, oracle);
    std::vector<double> shape;
    for (double c : coherent) {
        shape.push_back(c / scale);
    }
    const double dev = max_abs_deviation(shape, oracle);
    const double fwhm_mc = curve_fwhm(taus, coherent);
    const double fwhm_oracle = curve_fwhm(taus, oracle);
    const double fwhm_err = std::abs(fwhm_mc - fwhm_oracle) / fwhm_oracle;
    report(1,
           dev < kDelayShapeTol && fwhm_err < kDelayFwhmTol &&
               fig2a.seconds < kDelayRuntimeLimit,
           "delay-scan equivalence",
           "max deviation " + fmt(100.0 * dev) + "% of peak (< 5%), fwhm " + fmt(fwhm_mc) +
               " fs vs oracle " + fmt(fwhm_oracle) + " fs (" + fmt(100.0 * fwhm_err) +
               "% < 10%; reference scale 23 fs), runtime " + fmt(fig2a.seconds, 3) + " s (< 300 s)");
}

void criterion_flatness(const Timed& fig2a, const Timed& fig2b)
{
    const auto a = flatness(fig2a.result);
    const auto b = flatness(fig2b.result);
    report(2, a.range < a.allowed && b.range < b.allowed, "incoherent background flatness",
           "delay range " + fmt(a.range) + " < " + fmt(a.allowed) + ", pump-detuning range " +
               fmt(b.range) + " < " + fmt(b.allowed) + " (2% + 3 stderr)");
}

void criterion_selectivity(const Timed& fig2b)
{
    const auto& r = fig2b.result;
    const auto cfg = preset_config("fig2b");
    const auto nm = column(r, &ScanRow::axis_value);
    const auto coherent = column(r, &ScanRow::coherent);
    const auto oracle = column(r, &ScanRow::oracle);
    const double fwhm_mc = curve_fwhm(nm, coherent);
    const double fwhm_conv = curve_fwhm(nm, oracle);
    const double err = std::abs(fwhm_mc - fwhm_conv) / fwhm_conv;
    const double center = cfg.transition.wavelength_nm;
    const double edge = 10.0 * (cfg.pump.fwhm_nm + cfg.transition.fwhm_nm);
    double worst = 0.0;
    for (const auto& row : r.rows) {
        if (std::abs(row.axis_value - center) >= edge - 1e-9) {
            worst = std::max(worst, row.coherent / row.total);
        }
    }
    report(3, err < kSelectivityFwhmTol && worst < kSelectivityEdgeRatio, "spectral selectivity",
           "coherent fwhm " + fmt(fwhm_mc) + " nm vs convolution width " + fmt(fwhm_conv) +
               " nm (" + fmt(100.0 * err) + "% < 20%; reference 0.12 nm), coherent/total at +-" +
               fmt(edge) + " nm " + fmt(worst) + " (< 0.01)");
}

void criterion_ratio(const Timed& fig2a)
{
    const auto cfg = preset_config("fig2a");
    const auto setup = build_setup(cfg);
    const RatioInputs in{setup.source.fwhm_omega, setup.pump.fwhm_omega,
                         setup.transition.fwhm_omega, setup.source.mean_photons_per_mode};
    const double expected = coherent_incoherent_ratio(in);
    const auto& row = fig2a.result.rows[nearest_row(fig2a.result, 0.0)];
    const double ratio = row.coherent / row.incoherent;
    const double rel = std::hypot(row.stderr_coherent / row.coherent,
                                  row.stderr_incoherent / row.incoherent);
    const double sigmas = std::abs(ratio / expected - 1.0) / rel;

    const double pi = std::numbers::pi;
    const bool examples =
        std::abs(coherent_incoherent_ratio({1.0, 0.3, 0.7, 1e12}) - 1.0) < 1e-12 &&
        std::abs(coherent_incoherent_ratio({5.0, 0.3, 0.7, 1.0 / (2.0 * pi)}) - 10.0) < 1e-12 &&
        std::abs(coherent_incoherent_ratio({1.0, 0.3, 0.7, 1e-9}) /
                     coherent_incoherent_ratio({1.0, 0.3, 0.7, 1e-8}) -
                 10.0) < 1e-3;
    report(4,
           sigmas < kRatioSigmas && std::abs(expected / kRatioTarget - 1.0) < 1e-3 && examples,
           "coherent/incoherent ratio at zero delay",
           "MC " + fmt(ratio) + " vs B/(gamma_p+gamma_f) formula " + fmt(expected) + ", " +
               fmt(sigmas, 3) + " combined stderr (< 3; relative stderr " + fmt(100.0 * rel, 3) +
               "%), analytic examples " + (examples ? "exact" : "wrong"));
}

void criterion_control(const Timed& fig3c)
{
    const auto& r = fig3c.result;
    const double pi = std::numbers::pi;
    double top = 0.0;
    for (const auto& row : r.rows) {
        top = std::max(top, row.coherent);
    }
    bool minima = true;
    bool maxima = true;
    std::ostringstream d;
    for (int k : {1, 3, 5}) {
        const auto& row = r.rows[nearest_row(r, k * pi)];
        minima &= row.coherent < kControlMinTol * top + 3.0 * row.stderr_coherent;
        d << "C(" << k << "pi)/max " << fmt(row.coherent / top, 3) << ", ";
    }
    const double ref = r.rows[nearest_row(r, 0.0)].coherent;
    for (int k : {2, 4, 6}) {
        const auto& row = r.rows[nearest_row(r, k * pi)];
        maxima &= std::abs(row.coherent / ref - 1.0) < kControlMaxTol;
        d << "C(" << k << "pi)/C(0) " << fmt(row.coherent / ref, 4) << ", ";
    }
    std::vector<double> law;
    for (const auto& row : r.rows) {
        law.push_back(square_wave_law(row.axis_value));
    }
    const auto coherent = column(r, &ScanRow::coherent);
    const double scale = fit_scale(coherent, law);
    std::vector<double> shape;
    for (double c : coherent) {
        shape.push_back(c / scale);
    }
    const double rms = rms_deviation(shape, law);
    d << "rms vs cos^2(phi/2) " << fmt(rms, 3) << " (< 0.05)";
    report(5, minima && maxima && rms < kControlRmsTol, "coherent control by square-wave magnitude",
           d.str());
}

void criterion_dark_pulse(const Timed& fig3b)
{
    const auto& r = fig3b.result;
    const auto checks = check_preset_shape("fig3b", preset_config("fig3b"), r);
    const auto coherent = column(r, &ScanRow::coherent);
    const auto oracle = column(r, &ScanRow::oracle);
    const double scale = fit_scale(coherent, oracle);
    std::vector<double> shape;
    for (double c : coherent) {
        shape.push_back(c / scale);
    }
    const double dev = max_abs_deviation(shape, oracle);
    report(6, checks.at(0).passed && dev < kDarkPulseTol, "dark-pulse splitting",
           checks.at(0).detail + ", max deviation from oracle " + fmt(100.0 * dev) +
               "% of peak (< 5%)");
}

void criterion_brute_force()
{
    const auto grid = t::grid(64);
    const auto src = t::source(grid, 60.0);
    const auto pump = t::pump_bins(grid, 1.5);
    const auto tr = t::transition_bins(grid, 4.0, Lineshape::gaussian);
    const DownConverter dc(src);
    constexpr std::size_t kR = 8;
    constexpr std::uint64_t kSeed = 77;
    const double tau = 15.0 * units::femtosecond;

    std::vector<ScanPoint> points(2);
    points[0].pump_center_omega = pump.center_omega;
    points[1].pump_center_omega = pump.center_omega;
    points[1].signal_mask = PhaseMask::delay(tau);
    const auto pipeline = scan_ensemble(dc, pump, tr, points, {kR, kSeed, 2, 0});

    double worst = 0.0;
    for (std::size_t p = 0; p < points.size(); ++p) {
        std::vector<DownConvertedPair> pairs;
        for (std::size_t i = 0; i < kR; ++i) {
            auto rng = realization_engine(kSeed, i);
            auto pair = dc.generate(pump, rng);
            apply_mask_inplace(pair.signal, points[p].signal_mask);
            pairs.push_back(std::move(pair));
        }
        const auto slow = t::brute_tpa(pairs, tr);
        worst = std::max({worst, t::rel_diff(pipeline[p].total, slow.total),
                          t::rel_diff(pipeline[p].coherent, slow.coherent)});
    }
    report(7, worst < kBruteRelTol, "pipeline vs O(N^2) double sum",
           "64 bins, 8 realizations, 2 delays: max relative difference " + fmt(worst, 3) +
               " (< 1e-9)");
}

void criterion_statistics()
{
    const auto setup = build_setup(preset_config("fig2a"));
    const DownConverter dc(setup.source);
    const auto& grid = setup.grid;
    const auto density = dc.density();
    const double half = 0.5 * setup.source.fwhm_omega;
    std::vector<std::size_t> bins;
    for (double offset : {-2.0 * half, -half, 0.0, half, 2.0 * half}) {
        bins.push_back(*grid.nearest_bin(setup.source.center_omega + offset));
    }
    std::vector<std::vector<double>> intensity(bins.size());
    std::vector<Complex> mean(bins.size());
    for (std::size_t r = 0; r < kStatsRealizations; ++r) {
        auto rng = realization_engine(kStatsSeed, r);
        const auto field = dc.draw_signal(rng);
        for (std::size_t b = 0; b < bins.size(); ++b) {
            const Complex e = field[bins[b]];
            intensity[b].push_back(std::norm(e) / density[bins[b]]);
            mean[b] += e / static_cast<double>(kStatsRealizations);
        }
    }
    bool ks_ok = true;
    bool mean_ok = true;
    double min_p = 1.0;
    double max_mean_sigmas = 0.0;
    const auto exponential = [](double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x); };
    for (std::size_t b = 0; b < bins.size(); ++b) {
        const auto ks = stats::ks_one_sample(intensity[b], exponential);
        ks_ok &= ks.p_value > kKsAlpha;
        min_p = std::min(min_p, ks.p_value);
        // |<E>| of a circular Gaussian with <|E|^2> = S has sigma sqrt(S / R).
        const double sigma = std::sqrt(density[bins[b]] / static_cast<double>(kStatsRealizations));
        const double z = std::abs(mean[b]) / sigma;
        mean_ok &= z < kMeanFieldSigmas;
        max_mean_sigmas = std::max(max_mean_sigmas, z);
    }
    report(8, ks_ok && mean_ok, "thermal per-bin statistics",
           "exponential KS over 1e4 realizations at 5 bins, min p " + fmt(min_p, 3) +
               " (> 0.01); max |<E_s>| " + fmt(max_mean_sigmas, 3) + " sigma (< 3)");
}

void criterion_ocdma()
{
    RunConfig cfg = preset_config("ocdma-demo");
    const auto start = std::chrono::steady_clock::now();
    const auto rep = run_ocdma(cfg);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double n = static_cast<double>(rep.bits.size());
    const double band = kEveSigmas * std::sqrt(0.25 / n);
    const auto& eve = rep.eavesdropper;
    const bool eve_ok = std::abs(eve.intensity_accuracy - 0.5) < band &&
                        std::abs(eve.phase_accuracy - 0.5) < band;
    report(9,
           rep.bits.size() == 256 && rep.matched.bit_errors == 0 && eve_ok &&
               rep.wrong_delay_ks.p_value > kWrongDelayP,
           "OCDMA demo",
           std::to_string(rep.bits.size()) + " bits, matched BER " +
               fmt(rep.matched.bit_error_rate()) + " (= 0), eavesdropper accuracy " +
               fmt(eve.intensity_accuracy, 3) + " / " + fmt(eve.phase_accuracy, 3) +
               " (0.5 +- " + fmt(band, 3) + "), wrong-delay KS p " +
               fmt(rep.wrong_delay_ks.p_value, 3) + " (> 0.05), " + fmt(seconds, 3) + " s");
}

void criterion_determinism()
{
    bool same = true;
    std::string detail;
    for (const char* name : {"fig2a", "fig3c"}) {
        RunConfig cfg = preset_config(name);
        cfg.realizations = 200;
        cfg.workers = 1;
        const auto one = csv_of(run_scan(cfg));
        cfg.workers = 4;
        const auto many = csv_of(run_scan(cfg));
        same &= one == many;
        detail += std::string(name) + (one == many ? " identical, " : " differs, ");
    }
    RunConfig o = preset_config("ocdma-demo");
    o.ocdma->bits = 32;
    o.workers = 1;
    const auto a = run_ocdma(o);
    o.workers = 4;
    const auto b = run_ocdma(o);
    std::ostringstream ca;
    std::ostringstream cb;
    ocdma::write_csv(ca, a.matched);
    ocdma::write_csv(cb, b.matched);
    same &= ca.str() == cb.str();
    detail += std::string("ocdma ") + (ca.str() == cb.str() ? "identical" : "differs");
    report(10, same, "determinism across 1 and 4 workers", detail);
}

}  // namespace

int main()
{
    try {
        const auto fig2a = run_preset("fig2a");
        criterion_delay(fig2a);
        const auto fig2b = run_preset("fig2b");
        criterion_flatness(fig2a, fig2b);
        criterion_selectivity(fig2b);
        criterion_ratio(fig2a);
        criterion_control(run_preset("fig3c"));
        criterion_dark_pulse(run_preset("fig3b"));
        criterion_brute_force();
        criterion_statistics();
        criterion_ocdma();
        criterion_determinism();
    } catch (const std::exception& e) {
        std::cout << "[FAIL] acceptance aborted: " << e.what() << std::endl;
        return 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
