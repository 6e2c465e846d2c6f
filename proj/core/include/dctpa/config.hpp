#pragma once

#include "dctpa/detector.hpp"
#include "dctpa/errors.hpp"
#include "dctpa/shaper.hpp"
#include "dctpa/source.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dctpa {

enum class ScanAxis { delay, pump_wavelength, mask_magnitude };

ScanAxis parse_axis(std::string_view name);
std::string_view to_string(ScanAxis axis) noexcept;
/// Unit of the axis values in configs and CSV: fs, nm or rad.
std::string_view axis_unit(ScanAxis axis) noexcept;

struct GridConfig {
    double center_nm = 1033.3;
    double span_nm = 500.0;
    std::size_t n_bins = 4096;
};

struct SourceConfig {
    EnvelopeShape envelope = EnvelopeShape::gaussian;
    double center_nm = 1033.3;
    double fwhm_nm = 100.0;
    double photons_per_mode = 1e4;
};

struct PumpConfig {
    double center_nm = 516.65;
    double fwhm_nm = 0.04;
    Lineshape lineshape = Lineshape::lorentzian;
};

struct TransitionConfig {
    double wavelength_nm = 516.65;
    double fwhm_nm = 0.08;
    Lineshape lineshape = Lineshape::lorentzian;
};

/// Spectral phase on one beam. type: none | constant | square_wave |
/// dispersion | table.
struct MaskConfig {
    std::string type = "none";
    std::string target = "signal";  // signal | idler
    double phase_rad = 0.0;          // constant
    double magnitude_rad = 0.0;      // square_wave
    double period_nm = 0.0;          // square_wave, nm-equivalent at the source center
    std::optional<double> offset_nm; // square_wave edge; default the source center
    double gdd_fs2 = 0.0;            // dispersion, about the source center
    std::filesystem::path file;      // table
};

/// Axis values: delay in fs, pump_wavelength in nm, mask_magnitude in rad.
struct ScanConfig {
    ScanAxis axis = ScanAxis::delay;
    double start = 0.0;
    double stop = 0.0;
    std::size_t steps = 2;
    double delay_fs = 0.0;  // fixed signal delay for the non-delay axes

    std::vector<double> values() const;
};

struct OcdmaConfig {
    std::size_t bits = 256;  // random payload length when no bits_file is given
    std::filesystem::path bits_file;
    std::uint64_t bits_seed = 7;
    std::size_t realizations_per_bit = 64;
    std::vector<double> channel_delays_fs{0.0};
    std::size_t receive_channel = 0;
    double wrong_delay_offset_fs = 200.0;
};

struct RunConfig {
    GridConfig grid;
    SourceConfig source;
    PumpConfig pump;
    TransitionConfig transition;
    MaskConfig mask;
    std::optional<ScanConfig> scan;
    std::optional<OcdmaConfig> ocdma;
    std::size_t realizations = 2000;
    std::uint64_t seed = 1;
    std::size_t workers = 0;  // 0: hardware concurrency
    std::size_t batches = 0;  // 0: default_batch_count
    std::filesystem::path output;
    std::filesystem::path base_dir;  // relative paths resolve against this
};

struct ConfigIssue {
    std::string path;
    std::string message;
};

/// All problems found in a config, collected before reporting.
class ConfigErrors : public ConfigError {
public:
    explicit ConfigErrors(std::vector<ConfigIssue> issues);
    const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

/// Parses YAML text; unknown keys and type errors are reported with their
/// field path. Does not run the physics checks.
RunConfig parse_config(std::string_view yaml, const std::filesystem::path& base_dir = {});

/// Structural and physics checks: grid power of two and coverage, envelope
/// tails, bin_width < gamma_p / 4 and < gamma_f / 4, lineshape truncation,
/// scan resolvability. Returns every issue found.
std::vector<ConfigIssue> check_config(const RunConfig& config);

/// parse_config + check_config on a file; throws ConfigErrors listing every issue.
RunConfig validate_config(const std::filesystem::path& path);
/// Same for in-memory text.
RunConfig validate_config_text(std::string_view yaml, const std::filesystem::path& base_dir = {});

/// YAML rendering that parse_config reads back to the same config.
std::string to_yaml(const RunConfig& config);

/// Library objects described by a config.
struct Setup {
    FrequencyGrid grid;
    SourceSpec source;
    PumpSpec pump;
    TransitionSpec transition;
    PhaseMask mask;
    bool mask_on_idler = false;
};

Setup build_setup(const RunConfig& config);

/// Base mask with its magnitude replaced (square_wave only).
PhaseMask square_wave_with_magnitude(const RunConfig& config, double magnitude_rad);

}  // namespace dctpa
