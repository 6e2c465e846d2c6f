#pragma once

#include "dctpa/config.hpp"
#include "dctpa/ocdma.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dctpa {

inline constexpr int kCsvSchema = 1;

struct ScanRow {
    double axis_value = 0.0;  // fs, nm or rad (see axis_unit)
    double total = 0.0;
    double coherent = 0.0;
    double incoherent = 0.0;
    double stderr_total = 0.0;
    double stderr_coherent = 0.0;
    double oracle = 0.0;  // peak-normalized analytic curve; NaN when undefined
    double stderr_incoherent = 0.0;  // not part of the CSV
};

struct ScanResult {
    ScanAxis axis = ScanAxis::delay;
    std::size_t realizations = 0;
    std::uint64_t seed = 0;
    std::vector<ScanRow> rows;
};

/// Threads to use for a requested worker count (0: hardware concurrency).
std::size_t resolve_workers(std::size_t requested) noexcept;

/// Runs the configured scan. Every axis point sees the same realizations;
/// output depends only on (config, seed), not on the worker count. Throws
/// ConfigErrors for an invalid config.
ScanResult run_scan(const RunConfig& config);

/// Analytic curve for the scan points, peak-normalized: the transform-limited
/// pair through the same masks for delay and mask_magnitude scans, the
/// pump/final-state overlap for pump_wavelength scans.
std::vector<double> oracle_curve(const RunConfig& config);

/// CSV: "#schema=1", a "# axis=... unit=..." comment, then
/// axis_value,total,coherent,incoherent,stderr_total,stderr_coherent,oracle.
void write_scan_csv(std::ostream& out, const ScanResult& result);
/// Reads write_scan_csv output back. Throws std::runtime_error on schema mismatch.
ScanResult read_scan_csv(std::istream& in);

/// Oracle-only CSV: axis_value,oracle.
void write_oracle_csv(std::ostream& out, const RunConfig& config,
                      const std::vector<double>& oracle);

struct OcdmaReport {
    std::vector<std::uint8_t> bits;
    ocdma::BitstreamResult matched;
    ocdma::BitstreamResult wrong_delay;
    stats::KsResult wrong_delay_ks;  // bit-0 vs bit-1 statistics at the wrong delay
    ocdma::EavesdropResult eavesdropper;
};

/// Transmit, multiplex, decode at the matched and the offset delay, and run
/// the signal-only eavesdropper.
OcdmaReport run_ocdma(const RunConfig& config);
std::string ocdma_summary(const OcdmaReport& report);

/// fig2a | fig2b | fig3b | fig3c | ocdma-demo
const std::vector<std::string>& preset_names();
RunConfig preset_config(std::string_view name);

struct ShapeCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Normalized shape assertions for a preset's scan output.
std::vector<ShapeCheck> check_preset_shape(std::string_view name, const RunConfig& config,
                                           const ScanResult& result);

}  // namespace dctpa
