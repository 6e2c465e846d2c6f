#include "dctpa/harness.hpp"

#include "dctpa/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dctpa {

namespace {

// Desk-scale base: 4096 bins with linewidths scaled so B / (gamma_p + gamma_f) = 50.
RunConfig scaled_base()
{
    RunConfig cfg;
    cfg.grid = {1033.3, 500.0, 4096};
    cfg.source = {EnvelopeShape::gaussian, 1033.3, 100.0, 1e4};
    cfg.pump = {516.65, 0.2, Lineshape::lorentzian};
    cfg.transition = {516.65, 0.3, Lineshape::lorentzian};
    cfg.seed = 20240601;
    return cfg;
}

double sigma_incoherent(const ScanRow& r)
{
    return std::isfinite(r.stderr_incoherent) ? r.stderr_incoherent
                                              : r.stderr_total + r.stderr_coherent;
}

std::size_t argmax_coherent(const std::vector<ScanRow>& rows)
{
    return static_cast<std::size_t>(
        std::max_element(rows.begin(), rows.end(),
                         [](const ScanRow& a, const ScanRow& b) { return a.coherent < b.coherent; }) -
        rows.begin());
}

std::size_t nearest_row(const std::vector<ScanRow>& rows, double value)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (std::abs(rows[i].axis_value - value) < std::abs(rows[best].axis_value - value)) {
            best = i;
        }
    }
    return best;
}

ShapeCheck flat_background(const std::vector<ScanRow>& rows)
{
    double lo = rows.front().incoherent;
    double hi = lo;
    double mean = 0.0;
    double sigma = 0.0;
    for (const auto& r : rows) {
        lo = std::min(lo, r.incoherent);
        hi = std::max(hi, r.incoherent);
        mean += r.incoherent;
        sigma = std::max(sigma, sigma_incoherent(r));
    }
    mean /= static_cast<double>(rows.size());
    const double allowed = 0.02 * mean + 3.0 * sigma;
    std::ostringstream d;
    d << "incoherent range " << (hi - lo) << " vs allowed " << allowed;
    return {"flat incoherent background", hi - lo < allowed, d.str()};
}

std::string fmt(double v)
{
    std::ostringstream s;
    s << v;
    return s.str();
}

}  // namespace

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{"fig2a", "fig2b", "fig3b", "fig3c", "ocdma-demo"};
    return names;
}

RunConfig preset_config(std::string_view name)
{
    RunConfig cfg = scaled_base();
    if (name == "fig2a") {
        cfg.scan = ScanConfig{ScanAxis::delay, -150.0, 150.0, 121, 0.0};
        cfg.realizations = 2000;
        cfg.output = "fig2a.csv";
    } else if (name == "fig2b") {
        // Physical linewidths need a finer grid; gaussian final state (see README).
        cfg.grid.n_bins = 16384;
        cfg.pump.fwhm_nm = 0.04;
        cfg.transition = {516.65, 0.08, Lineshape::gaussian};
        cfg.scan = ScanConfig{ScanAxis::pump_wavelength, 516.65 - 1.2, 516.65 + 1.2, 121, 0.0};
        cfg.realizations = 500;
        cfg.output = "fig2b.csv";
    } else if (name == "fig3b") {
        cfg.mask.type = "square_wave";
        cfg.mask.magnitude_rad = std::numbers::pi;
        cfg.mask.period_nm = 12.5;
        cfg.scan = ScanConfig{ScanAxis::delay, -400.0, 400.0, 161, 0.0};
        cfg.realizations = 1000;
        cfg.output = "fig3b.csv";
    } else if (name == "fig3c") {
        cfg.mask.type = "square_wave";
        cfg.mask.period_nm = 12.5;
        cfg.scan = ScanConfig{ScanAxis::mask_magnitude, 0.0, 6.0 * std::numbers::pi, 49, 0.0};
        cfg.realizations = 1000;
        cfg.output = "fig3c.csv";
    } else if (name == "ocdma-demo") {
        OcdmaConfig o;
        o.channel_delays_fs = {0.0, 300.0};
        cfg.ocdma = o;
        cfg.output = "ocdma-demo.csv";
    } else {
        throw ConfigError("preset", "unknown preset '" + std::string(name) +
                                        "' (expected fig2a|fig2b|fig3b|fig3c|ocdma-demo)");
    }
    return cfg;
}

std::vector<ShapeCheck> check_preset_shape(std::string_view name, const RunConfig& cfg,
                                           const ScanResult& result)
{
    std::vector<ShapeCheck> checks;
    const auto& rows = result.rows;
    if (rows.size() < 3) {
        return {{"enough scan points", false, "fewer than 3 rows"}};
    }
    const double step = std::abs(rows[1].axis_value - rows[0].axis_value);
    const std::size_t peak = argmax_coherent(rows);
    const double peak_value = rows[peak].coherent;

    if (name == "fig2a") {
        checks.push_back({"single central coherent peak",
                          std::abs(rows[peak].axis_value) <= step,
                          "peak at " + fmt(rows[peak].axis_value) + " fs"});
        double wing = 0.0;
        for (const auto& r : rows) {
            if (std::abs(r.axis_value) >= 100.0) {
                wing = std::max(wing, r.coherent);
            }
        }
        checks.push_back({"coherent wings below 5% of peak", wing < 0.05 * peak_value,
                          "max wing/peak " + fmt(wing / peak_value)});
        checks.push_back(flat_background(rows));
    } else if (name == "fig2b") {
        const double center = units::nm_from_omega(units::omega_from_nm(cfg.transition.wavelength_nm));
        checks.push_back({"coherent peak on resonance",
                          std::abs(rows[peak].axis_value - center) <= step,
                          "peak at " + fmt(rows[peak].axis_value) + " nm"});
        const double edge = 10.0 * (cfg.pump.fwhm_nm + cfg.transition.fwhm_nm);
        double worst = 0.0;
        for (const auto& r : rows) {
            if (std::abs(r.axis_value - center) >= edge - 1e-9) {
                worst = std::max(worst, r.coherent / r.total);
            }
        }
        checks.push_back({"coherent/total below 1% at 10(gamma_p+gamma_f)", worst < 0.01,
                          "max ratio " + fmt(worst)});
        checks.push_back(flat_background(rows));
    } else if (name == "fig3b") {
        const std::size_t mid = nearest_row(rows, 0.0);
        double left = 0.0;
        double right = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            (i < mid ? left : right) = std::max(i < mid ? left : right, rows[i].coherent);
        }
        const double center = rows[mid].coherent + 3.0 * rows[mid].stderr_coherent;
        checks.push_back({"dark pulse: minimum at zero delay flanked by two maxima",
                          left > center && right > center,
                          "center " + fmt(rows[mid].coherent) + ", maxima " + fmt(left) + " / " +
                              fmt(right)});
    } else if (name == "fig3c") {
        const double top = peak_value;
        bool minima_ok = true;
        bool maxima_ok = true;
        std::ostringstream d;
        for (int k : {1, 3, 5}) {
            const auto& r = rows[nearest_row(rows, k * std::numbers::pi)];
            minima_ok &= r.coherent < 0.02 * top + 3.0 * r.stderr_coherent;
            d << "phi=" << k << "pi: " << r.coherent / top << "; ";
        }
        const double ref = rows[nearest_row(rows, 0.0)].coherent;
        for (int k : {2, 4, 6}) {
            const auto& r = rows[nearest_row(rows, k * std::numbers::pi)];
            maxima_ok &= std::abs(r.coherent - ref) < 0.03 * ref;
            d << "phi=" << k << "pi: " << r.coherent / ref << "; ";
        }
        checks.push_back({"coherent minima at pi, 3pi, 5pi", minima_ok, d.str()});
        checks.push_back({"coherent maxima at 2pi, 4pi, 6pi", maxima_ok, d.str()});
        checks.push_back(flat_background(rows));
    } else {
        checks.push_back({"known scan preset", false, "no shape checks for '" + std::string(name) + "'"});
    }
    return checks;
}

}  // namespace dctpa
