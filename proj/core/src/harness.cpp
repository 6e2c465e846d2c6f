#include "dctpa/harness.hpp"

#include "dctpa/analytic.hpp"
#include "dctpa/units.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dctpa {

namespace {

void require_valid(const RunConfig& cfg)
{
    auto issues = check_config(cfg);
    if (!issues.empty()) {
        throw ConfigErrors(std::move(issues));
    }
}

const ScanConfig& require_scan(const RunConfig& cfg)
{
    if (!cfg.scan) {
        throw ConfigErrors(std::vector<ConfigIssue>{{"scan", "config has no scan section"}});
    }
    return *cfg.scan;
}

std::vector<ScanPoint> scan_points(const RunConfig& cfg, const Setup& setup)
{
    const auto& scan = require_scan(cfg);
    const PhaseMask fixed_delay = scan.delay_fs != 0.0
                                      ? PhaseMask::delay(scan.delay_fs * units::femtosecond)
                                      : PhaseMask{};
    std::vector<ScanPoint> points;
    for (double v : scan.values()) {
        PhaseMask shaped = setup.mask;
        double pump_center = setup.pump.center_omega;
        PhaseMask delay = fixed_delay;
        switch (scan.axis) {
        case ScanAxis::delay:
            delay = PhaseMask::delay(v * units::femtosecond);
            break;
        case ScanAxis::pump_wavelength:
            pump_center = units::omega_from_nm(v);
            break;
        case ScanAxis::mask_magnitude:
            shaped = square_wave_with_magnitude(cfg, v);
            break;
        }
        ScanPoint p;
        p.pump_center_omega = pump_center;
        if (setup.mask_on_idler) {
            p.signal_mask = delay;
            p.idler_mask = shaped;
        } else {
            p.signal_mask = shaped.then(delay);
        }
        points.push_back(std::move(p));
    }
    return points;
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::size_t resolve_workers(std::size_t requested) noexcept
{
    if (requested != 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> oracle_curve(const RunConfig& cfg)
{
    require_valid(cfg);
    const Setup setup = build_setup(cfg);
    const auto& scan = require_scan(cfg);
    if (scan.axis == ScanAxis::pump_wavelength) {
        std::vector<double> detunings;
        for (double nm : scan.values()) {
            detunings.push_back(units::omega_from_nm(nm) - setup.transition.omega_f);
        }
        return selectivity_curve(setup.pump, setup.transition, detunings);
    }
    const DownConverter source(setup.source);
    const TpaWeights weights(setup.grid, setup.transition);
    std::vector<double> out;
    for (const auto& p : scan_points(cfg, setup)) {
        out.push_back(tl_coherent(source, p.pump_center_omega, weights, p.signal_mask, p.idler_mask));
    }
    const double peak = *std::max_element(out.begin(), out.end());
    if (peak > 0.0) {
        for (auto& v : out) {
            v /= peak;
        }
    }
    return out;
}

ScanResult run_scan(const RunConfig& cfg)
{
    require_valid(cfg);
    const Setup setup = build_setup(cfg);
    const auto& scan = require_scan(cfg);
    const auto points = scan_points(cfg, setup);
    const DownConverter source(setup.source);
    const EnsembleOptions options{cfg.realizations, cfg.seed, resolve_workers(cfg.workers),
                                  cfg.batches};
    const auto results = scan_ensemble(source, setup.pump, setup.transition, points, options);
    const auto oracle = oracle_curve(cfg);
    const auto values = scan.values();
    for (const auto& r : results) {
        if (!std::isfinite(r.total) || !std::isfinite(r.coherent)) {
            throw NumericalError("non-finite TPA estimate in scan");
        }
    }

    ScanResult out;
    out.axis = scan.axis;
    out.realizations = cfg.realizations;
    out.seed = cfg.seed;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        out.rows.push_back({values[i], r.total, r.coherent, r.incoherent, r.stderr_total,
                            r.stderr_coherent, oracle[i], r.stderr_incoherent});
    }
    return out;
}

void write_scan_csv(std::ostream& out, const ScanResult& result)
{
    out << "#schema=" << kCsvSchema << '\n';
    out << "# axis=" << to_string(result.axis) << " unit=" << axis_unit(result.axis)
        << " realizations=" << result.realizations << " seed=" << result.seed << '\n';
    out << "axis_value,total,coherent,incoherent,stderr_total,stderr_coherent,oracle\n";
    for (const auto& r : result.rows) {
        out << format_double(r.axis_value) << ',' << format_double(r.total) << ','
            << format_double(r.coherent) << ',' << format_double(r.incoherent) << ','
            << format_double(r.stderr_total) << ',' << format_double(r.stderr_coherent) << ','
            << format_double(r.oracle) << '\n';
    }
}

ScanResult read_scan_csv(std::istream& in)
{
    ScanResult result;
    std::string line;
    if (!std::getline(in, line) || line != "#schema=" + std::to_string(kCsvSchema)) {
        throw std::runtime_error("scan CSV: missing or unsupported schema line");
    }
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line.rfind("# axis=", 0) == 0) {
            std::istringstream fields(line.substr(2));
            std::string kv;
            while (fields >> kv) {
                const auto eq = kv.find('=');
                const auto key = kv.substr(0, eq);
                const auto value = kv.substr(eq + 1);
                if (key == "axis") {
                    result.axis = parse_axis(value);
                } else if (key == "realizations") {
                    result.realizations = std::stoull(value);
                } else if (key == "seed") {
                    result.seed = std::stoull(value);
                }
            }
            continue;
        }
        if (line[0] == '#') {
            continue;
        }
        if (!header) {
            if (line != "axis_value,total,coherent,incoherent,stderr_total,stderr_coherent,oracle") {
                throw std::runtime_error("scan CSV: unexpected column header");
            }
            header = true;
            continue;
        }
        std::istringstream fields(line);
        std::string cell;
        double v[7];
        for (double& x : v) {
            if (!std::getline(fields, cell, ',')) {
                throw std::runtime_error("scan CSV: short row");
            }
            x = std::strtod(cell.c_str(), nullptr);
        }
        result.rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6],
                               std::numeric_limits<double>::quiet_NaN()});
    }
    return result;
}

void write_oracle_csv(std::ostream& out, const RunConfig& cfg, const std::vector<double>& oracle)
{
    const auto& scan = require_scan(cfg);
    out << "#schema=" << kCsvSchema << '\n';
    out << "# axis=" << to_string(scan.axis) << " unit=" << axis_unit(scan.axis) << '\n';
    out << "axis_value,oracle\n";
    const auto values = scan.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << format_double(values[i]) << ',' << format_double(oracle[i]) << '\n';
    }
}

OcdmaReport run_ocdma(const RunConfig& cfg)
{
    require_valid(cfg);
    if (!cfg.ocdma) {
        throw ConfigErrors(std::vector<ConfigIssue>{{"ocdma", "config has no ocdma section"}});
    }
    const auto& o = *cfg.ocdma;
    const Setup setup = build_setup(cfg);
    const std::size_t workers = resolve_workers(cfg.workers);

    OcdmaReport report;
    if (!o.bits_file.empty()) {
        const auto path = o.bits_file.is_relative() && !cfg.base_dir.empty()
                              ? cfg.base_dir / o.bits_file
                              : o.bits_file;
        report.bits = ocdma::read_bits(path);
    } else {
        std::mt19937_64 rng(o.bits_seed);
        for (std::size_t i = 0; i < o.bits; ++i) {
            report.bits.push_back(static_cast<std::uint8_t>(rng() >> 63));
        }
    }

    std::vector<ocdma::Transmission> channels;
    for (std::size_t c = 0; c < o.channel_delays_fs.size(); ++c) {
        std::vector<std::uint8_t> bits = report.bits;
        if (c != o.receive_channel) {
            // Other users send their own independent payloads.
            std::mt19937_64 rng(o.bits_seed + 1000 * (c + 1));
            for (auto& b : bits) {
                b = static_cast<std::uint8_t>(rng() >> 63);
            }
        }
        const ocdma::ChannelSpec spec{o.channel_delays_fs[c] * units::femtosecond,
                                      o.realizations_per_bit};
        channels.push_back(ocdma::transmit(std::move(bits), spec, setup.source, setup.pump,
                                           cfg.seed + 0x9e3779b97f4a7c15ull * (c + 1)));
    }
    const ocdma::Line line = ocdma::multiplex(std::move(channels));
    const double matched = o.channel_delays_fs[o.receive_channel] * units::femtosecond;
    report.matched = ocdma::receive(line, o.receive_channel, matched, setup.transition, workers);
    report.wrong_delay =
        ocdma::receive(line, o.receive_channel, matched + o.wrong_delay_offset_fs * units::femtosecond,
                       setup.transition, workers);
    std::vector<double> zeros;
    std::vector<double> ones;
    for (std::size_t i = 0; i < report.wrong_delay.statistic.size(); ++i) {
        (report.wrong_delay.truth[i] ? ones : zeros).push_back(report.wrong_delay.statistic[i]);
    }
    if (!zeros.empty() && !ones.empty()) {
        report.wrong_delay_ks = stats::ks_two_sample(zeros, ones);
    }
    report.eavesdropper = ocdma::eavesdrop(line, o.receive_channel, 0x5a5a5a5aull, workers);
    return report;
}

std::string ocdma_summary(const OcdmaReport& r)
{
    std::ostringstream out;
    out << "bits: " << r.bits.size() << '\n';
    out << "matched delay: bit errors " << r.matched.bit_errors << " (BER "
        << r.matched.bit_error_rate() << ")\n";
    out << "wrong delay: bit errors " << r.wrong_delay.bit_errors << ", KS p(bit0 vs bit1) "
        << r.wrong_delay_ks.p_value << '\n';
    out << "eavesdropper: intensity accuracy " << r.eavesdropper.intensity_accuracy
        << ", phase accuracy " << r.eavesdropper.phase_accuracy << ", intensity KS p "
        << r.eavesdropper.intensity_ks.p_value << '\n';
    return out.str();
}

}  // namespace dctpa
