#include "dctpa/config.hpp"

#include "dctpa/units.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace dctpa {

ScanAxis parse_axis(std::string_view name)
{
    if (name == "delay") {
        return ScanAxis::delay;
    }
    if (name == "pump_wavelength") {
        return ScanAxis::pump_wavelength;
    }
    if (name == "mask_magnitude") {
        return ScanAxis::mask_magnitude;
    }
    throw ConfigError("scan.axis", "unknown axis '" + std::string(name) +
                                       "' (expected delay|pump_wavelength|mask_magnitude)");
}

std::string_view to_string(ScanAxis axis) noexcept
{
    switch (axis) {
    case ScanAxis::delay:
        return "delay";
    case ScanAxis::pump_wavelength:
        return "pump_wavelength";
    case ScanAxis::mask_magnitude:
        return "mask_magnitude";
    }
    return "delay";
}

std::string_view axis_unit(ScanAxis axis) noexcept
{
    switch (axis) {
    case ScanAxis::delay:
        return "fs";
    case ScanAxis::pump_wavelength:
        return "nm";
    case ScanAxis::mask_magnitude:
        return "rad";
    }
    return "fs";
}

std::vector<double> ScanConfig::values() const
{
    std::vector<double> out(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        out[i] = steps == 1 ? start
                            : start + (stop - start) * static_cast<double>(i) /
                                          static_cast<double>(steps - 1);
    }
    return out;
}

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues)
{
    std::ostringstream out;
    out << issues.size() << " config error(s)";
    for (const auto& i : issues) {
        out << "\n  " << i.path << ": " << i.message;
    }
    return out.str();
}

/// Reads one YAML mapping, recording type errors and unknown keys.
class Section {
public:
    Section(const YAML::Node& node, std::string path, std::vector<ConfigIssue>& issues)
        : node_(node), path_(std::move(path)), issues_(issues)
    {
        if (node_ && !node_.IsMap()) {
            issues_.push_back({path_, "expected a mapping"});
            valid_ = false;
        }
    }

    ~Section()
    {
        if (!valid_ || !node_) {
            return;
        }
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!seen_.count(key)) {
                issues_.push_back({child(key), "unknown key"});
            }
        }
    }

    Section(const Section&) = delete;
    Section& operator=(const Section&) = delete;

    bool present(const std::string& key)
    {
        seen_.insert(key);
        return valid_ && node_ && node_[key];
    }

    YAML::Node node(const std::string& key)
    {
        seen_.insert(key);
        return valid_ && node_ ? node_[key] : YAML::Node();
    }

    std::string child(const std::string& key) const
    {
        return path_.empty() ? key : path_ + "." + key;
    }

    template <class T>
    void read(const std::string& key, T& out)
    {
        if (!present(key)) {
            return;
        }
        try {
            out = node_[key].as<T>();
        } catch (const YAML::Exception&) {
            issues_.push_back({child(key), std::string("expected ") + type_name<T>()});
        }
    }

    void read_double(const std::string& key, std::optional<double>& out)
    {
        double v = 0.0;
        if (present(key)) {
            const auto before = issues_.size();
            read(key, v);
            if (issues_.size() == before) {
                out = v;
            }
        }
    }

    template <class Enum, class Parse>
    void read_enum(const std::string& key, Enum& out, Parse parse)
    {
        std::string name;
        const auto before = issues_.size();
        read(key, name);
        if (issues_.size() != before || !present(key)) {
            return;
        }
        try {
            out = parse(name);
        } catch (const ConfigError& e) {
            issues_.push_back({child(key), e.what()});
        }
    }

    void issue(const std::string& key, const std::string& message)
    {
        issues_.push_back({child(key), message});
    }

private:
    template <class T>
    static const char* type_name()
    {
        if constexpr (std::is_same_v<T, std::string>) {
            return "a string";
        } else if constexpr (std::is_floating_point_v<T>) {
            return "a number";
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            return "a list of numbers";
        } else {
            return "a non-negative integer";
        }
    }

    YAML::Node node_;
    std::string path_;
    std::vector<ConfigIssue>& issues_;
    std::set<std::string> seen_;
    bool valid_ = true;
};

void read_scan(Section& top, RunConfig& cfg, std::vector<ConfigIssue>& issues)
{
    if (!top.present("scan")) {
        return;
    }
    Section s(top.node("scan"), "scan", issues);
    ScanConfig scan;
    if (!s.present("axis")) {
        s.issue("axis", "missing (delay|pump_wavelength|mask_magnitude)");
    }
    s.read_enum("axis", scan.axis, parse_axis);
    std::optional<double> start[3];
    std::optional<double> stop[3];
    const char* suffix[3] = {"fs", "nm", "rad"};
    for (int i = 0; i < 3; ++i) {
        s.read_double(std::string("start_") + suffix[i], start[i]);
        s.read_double(std::string("stop_") + suffix[i], stop[i]);
    }
    const int want = static_cast<int>(scan.axis);
    for (int i = 0; i < 3; ++i) {
        if (i != want && (start[i] || stop[i])) {
            s.issue(std::string(start[i] ? "start_" : "stop_") + suffix[i],
                    std::string("unit does not match axis '") + std::string(to_string(scan.axis)) +
                        "' (use _" + suffix[want] + ")");
        }
    }
    if (!start[want]) {
        s.issue(std::string("start_") + suffix[want], "missing");
    }
    if (!stop[want]) {
        s.issue(std::string("stop_") + suffix[want], "missing");
    }
    scan.start = start[want].value_or(0.0);
    scan.stop = stop[want].value_or(0.0);
    s.read("steps", scan.steps);
    s.read("delay_fs", scan.delay_fs);
    cfg.scan = scan;
}

void read_ocdma(Section& top, RunConfig& cfg, std::vector<ConfigIssue>& issues)
{
    if (!top.present("ocdma")) {
        return;
    }
    Section s(top.node("ocdma"), "ocdma", issues);
    OcdmaConfig o;
    s.read("bits", o.bits);
    std::string file;
    s.read("bits_file", file);
    o.bits_file = file;
    s.read("bits_seed", o.bits_seed);
    s.read("realizations_per_bit", o.realizations_per_bit);
    s.read("channel_delays_fs", o.channel_delays_fs);
    s.read("receive_channel", o.receive_channel);
    s.read("wrong_delay_offset_fs", o.wrong_delay_offset_fs);
    cfg.ocdma = o;
}

bool is_power_of_two(std::size_t n)
{
    return n != 0 && (n & (n - 1)) == 0;
}

std::filesystem::path resolve(const RunConfig& cfg, const std::filesystem::path& p)
{
    return p.is_relative() && !cfg.base_dir.empty() ? cfg.base_dir / p : p;
}

PhaseMask build_mask(const RunConfig& cfg, double source_center_omega)
{
    const auto& m = cfg.mask;
    if (m.type == "none") {
        return {};
    }
    if (m.type == "constant") {
        return PhaseMask::constant(m.phase_rad);
    }
    if (m.type == "square_wave") {
        const double period = units::omega_width_from_nm(m.period_nm, cfg.source.center_nm);
        const double offset =
            m.offset_nm ? units::omega_from_nm(*m.offset_nm) : source_center_omega;
        return square_wave_mask(m.magnitude_rad, period, offset);
    }
    if (m.type == "dispersion") {
        const double fs2 = units::femtosecond * units::femtosecond;
        return PhaseMask::dispersion(m.gdd_fs2 * fs2, source_center_omega);
    }
    if (m.type == "table") {
        return load_phase_table(resolve(cfg, m.file));
    }
    throw ConfigError("mask.type", "unknown mask type '" + m.type +
                                       "' (expected none|constant|square_wave|dispersion|table)");
}

template <class Fn>
void guarded(std::vector<ConfigIssue>& issues, const std::string& fallback_path, Fn&& fn)
{
    try {
        fn();
    } catch (const ConfigError& e) {
        const std::string path = e.path().empty() ? fallback_path : e.path();
        std::string msg = e.what();
        const std::string prefix = e.path() + ": ";
        if (!e.path().empty() && msg.rfind(prefix, 0) == 0) {
            msg.erase(0, prefix.size());
        }
        issues.push_back({path, msg});
    }
}

}  // namespace

ConfigErrors::ConfigErrors(std::vector<ConfigIssue> issues)
    : ConfigError(join_issues(issues)), issues_(std::move(issues))
{
}

namespace {

// Reads every field it can, recording problems in `issues`. Throws only when
// the document itself is unusable.
RunConfig parse_collect(std::string_view yaml, const std::filesystem::path& base_dir,
                        std::vector<ConfigIssue>& issues)
{
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml));
    } catch (const YAML::Exception& e) {
        throw ConfigErrors(std::vector<ConfigIssue>{{"<file>", std::string("YAML syntax error: ") + e.what()}});
    }
    RunConfig cfg;
    cfg.base_dir = base_dir;
    if (!root.IsMap()) {
        throw ConfigErrors(std::vector<ConfigIssue>{{"<file>", "expected a mapping at the top level"}});
    }
    {
        Section top(root, "", issues);
        {
            Section s(top.node("grid"), "grid", issues);
            s.read("center_nm", cfg.grid.center_nm);
            s.read("span_nm", cfg.grid.span_nm);
            s.read("n_bins", cfg.grid.n_bins);
        }
        {
            Section s(top.node("source"), "source", issues);
            s.read_enum("envelope", cfg.source.envelope, parse_envelope);
            s.read("center_nm", cfg.source.center_nm);
            s.read("fwhm_nm", cfg.source.fwhm_nm);
            s.read("photons_per_mode", cfg.source.photons_per_mode);
        }
        {
            Section s(top.node("pump"), "pump", issues);
            s.read("center_nm", cfg.pump.center_nm);
            s.read("fwhm_nm", cfg.pump.fwhm_nm);
            s.read_enum("lineshape", cfg.pump.lineshape, parse_lineshape);
        }
        {
            Section s(top.node("transition"), "transition", issues);
            s.read("wavelength_nm", cfg.transition.wavelength_nm);
            s.read("fwhm_nm", cfg.transition.fwhm_nm);
            s.read_enum("lineshape", cfg.transition.lineshape, parse_lineshape);
        }
        {
            Section s(top.node("mask"), "mask", issues);
            s.read("type", cfg.mask.type);
            s.read("target", cfg.mask.target);
            s.read("phase_rad", cfg.mask.phase_rad);
            s.read("magnitude_rad", cfg.mask.magnitude_rad);
            s.read("period_nm", cfg.mask.period_nm);
            s.read_double("offset_nm", cfg.mask.offset_nm);
            s.read("gdd_fs2", cfg.mask.gdd_fs2);
            std::string file;
            s.read("file", file);
            cfg.mask.file = file;
        }
        read_scan(top, cfg, issues);
        read_ocdma(top, cfg, issues);
        top.read("realizations", cfg.realizations);
        top.read("seed", cfg.seed);
        top.read("workers", cfg.workers);
        top.read("batches", cfg.batches);
        std::string output;
        top.read("output", output);
        cfg.output = output;
    }
    return cfg;
}

}  // namespace

RunConfig parse_config(std::string_view yaml, const std::filesystem::path& base_dir)
{
    std::vector<ConfigIssue> issues;
    RunConfig cfg = parse_collect(yaml, base_dir, issues);
    if (!issues.empty()) {
        throw ConfigErrors(std::move(issues));
    }
    return cfg;
}

std::vector<ConfigIssue> check_config(const RunConfig& cfg)
{
    std::vector<ConfigIssue> issues;
    auto positive = [&](const std::string& path, double v) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            issues.push_back({path, "must be a positive number"});
            return false;
        }
        return true;
    };

    bool ok = true;
    if (!is_power_of_two(cfg.grid.n_bins) || cfg.grid.n_bins < 64) {
        issues.push_back({"grid.n_bins", "n_bins must be a power of two and >= 64"});
        ok = false;
    }
    ok &= positive("grid.center_nm", cfg.grid.center_nm);
    ok &= positive("grid.span_nm", cfg.grid.span_nm);
    ok &= positive("source.center_nm", cfg.source.center_nm);
    ok &= positive("source.fwhm_nm", cfg.source.fwhm_nm);
    ok &= positive("pump.center_nm", cfg.pump.center_nm);
    ok &= positive("pump.fwhm_nm", cfg.pump.fwhm_nm);
    ok &= positive("transition.wavelength_nm", cfg.transition.wavelength_nm);
    ok &= positive("transition.fwhm_nm", cfg.transition.fwhm_nm);
    if (!(cfg.source.photons_per_mode > 0.0) || !std::isfinite(cfg.source.photons_per_mode)) {
        issues.push_back({"source.photons_per_mode", "must be a positive number"});
        ok = false;
    }
    if (cfg.mask.target != "signal" && cfg.mask.target != "idler") {
        issues.push_back({"mask.target", "expected signal|idler"});
    }
    if (cfg.scan.has_value() == cfg.ocdma.has_value()) {
        issues.push_back({"scan", "exactly one of 'scan' and 'ocdma' is required"});
    }
    if (cfg.scan) {
        if (cfg.realizations < 2) {
            issues.push_back({"realizations", "R must be >= 2"});
        }
        if (cfg.scan->steps < 2) {
            issues.push_back({"scan.steps", "steps must be >= 2"});
        }
        if (!std::isfinite(cfg.scan->start) || !std::isfinite(cfg.scan->stop)) {
            issues.push_back({"scan", "start/stop must be finite"});
            ok = false;
        }
        if (cfg.scan->axis == ScanAxis::mask_magnitude && cfg.mask.type != "square_wave") {
            issues.push_back({"mask.type", "a mask_magnitude scan needs a square_wave mask"});
        }
    }
    if (cfg.ocdma) {
        const auto& o = *cfg.ocdma;
        if (o.realizations_per_bit < 2) {
            issues.push_back({"ocdma.realizations_per_bit", "bit period needs >= 2 realizations"});
        }
        if (o.channel_delays_fs.empty()) {
            issues.push_back({"ocdma.channel_delays_fs", "need at least one channel"});
        }
        if (o.receive_channel >= o.channel_delays_fs.size()) {
            issues.push_back({"ocdma.receive_channel", "no such channel"});
        }
        if (!o.bits_file.empty() && !std::filesystem::exists(resolve(cfg, o.bits_file))) {
            issues.push_back({"ocdma.bits_file", "file not found"});
        }
    }
    if (!ok) {
        return issues;
    }

    std::optional<Setup> setup;
    guarded(issues, "grid", [&] { setup = build_setup(cfg); });
    if (!setup) {
        return issues;
    }
    const double bin = setup->grid.bin_width();
    if (!(bin < setup->pump.fwhm_omega / 4.0)) {
        issues.push_back({"grid.n_bins", "bin_width must be < gamma_p / 4 (pump linewidth)"});
    }
    if (!(bin < setup->transition.fwhm_omega / 4.0)) {
        issues.push_back({"grid.n_bins", "bin_width must be < gamma_f / 4 (final-state width)"});
    }
    guarded(issues, "source", [&] { setup->source.validate(); });
    guarded(issues, "transition", [&] { TpaWeights(setup->grid, setup->transition); });
    guarded(issues, "mask", [&] {
        SpectralField probe(setup->grid);
        apply_mask_inplace(probe, setup->mask);
    });

    double pump_lo = setup->pump.center_omega;
    double pump_hi = setup->pump.center_omega;
    if (cfg.scan) {
        const auto& s = *cfg.scan;
        const auto values = s.values();
        if (s.axis == ScanAxis::delay || s.delay_fs != 0.0) {
            double worst = std::abs(s.delay_fs);
            if (s.axis == ScanAxis::delay) {
                worst = std::max(std::abs(s.start), std::abs(s.stop));
            }
            const double limit = 0.25 * setup->grid.time_window() / units::femtosecond;
            if (worst > limit) {
                std::ostringstream msg;
                msg << "delay " << worst << " fs exceeds a quarter of the time window (" << limit
                    << " fs); increase n_bins";
                issues.push_back({s.axis == ScanAxis::delay ? "scan" : "scan.delay_fs", msg.str()});
            }
        }
        if (s.axis == ScanAxis::pump_wavelength) {
            for (double nm : values) {
                if (!(nm > 0.0)) {
                    issues.push_back({"scan", "pump wavelengths must be positive"});
                    return issues;
                }
                const double w = units::omega_from_nm(nm);
                pump_lo = std::min(pump_lo, w);
                pump_hi = std::max(pump_hi, w);
            }
            const double step = std::abs(units::omega_from_nm(values[0]) -
                                         units::omega_from_nm(values[1]));
            if (step < bin) {
                issues.push_back({"scan.steps", "pump wavelength step is below one grid bin"});
            }
        }
    }
    if (cfg.ocdma) {
        const double b = setup->source.fwhm_omega;
        auto delays = cfg.ocdma->channel_delays_fs;
        std::sort(delays.begin(), delays.end());
        for (std::size_t i = 1; i < delays.size(); ++i) {
            if ((delays[i] - delays[i - 1]) * units::femtosecond < 10.0 / b) {
                issues.push_back({"ocdma.channel_delays_fs",
                                  "channel delays must differ by more than 10 / B"});
            }
        }
    }
    guarded(issues, "pump", [&] {
        setup->source.check_mirror_coverage(pump_lo - setup->pump.max_excursion(),
                                            pump_hi + setup->pump.max_excursion());
    });
    return issues;
}

RunConfig validate_config_text(std::string_view yaml, const std::filesystem::path& base_dir)
{
    std::vector<ConfigIssue> issues;
    RunConfig cfg = parse_collect(yaml, base_dir, issues);
    // Fields that failed to parse keep their defaults; skip physics issues on them.
    const std::size_t parsed = issues.size();
    for (auto& issue : check_config(cfg)) {
        const auto end = issues.begin() + static_cast<std::ptrdiff_t>(parsed);
        const bool seen = std::any_of(issues.begin(), end,
                                      [&](const ConfigIssue& i) { return i.path == issue.path; });
        if (!seen) {
            issues.push_back(std::move(issue));
        }
    }
    if (!issues.empty()) {
        throw ConfigErrors(std::move(issues));
    }
    return cfg;
}

RunConfig validate_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigErrors(std::vector<ConfigIssue>{{"<file>", "cannot open config '" + path.string() + "'"}});
    }
    std::ostringstream text;
    text << in.rdbuf();
    return validate_config_text(text.str(), path.parent_path());
}

std::string to_yaml(const RunConfig& cfg)
{
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "center_nm" << YAML::Value << cfg.grid.center_nm;
    out << YAML::Key << "span_nm" << YAML::Value << cfg.grid.span_nm;
    out << YAML::Key << "n_bins" << YAML::Value << cfg.grid.n_bins;
    out << YAML::EndMap;
    out << YAML::Key << "source" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "envelope" << YAML::Value << std::string(to_string(cfg.source.envelope));
    out << YAML::Key << "center_nm" << YAML::Value << cfg.source.center_nm;
    out << YAML::Key << "fwhm_nm" << YAML::Value << cfg.source.fwhm_nm;
    out << YAML::Key << "photons_per_mode" << YAML::Value << cfg.source.photons_per_mode;
    out << YAML::EndMap;
    out << YAML::Key << "pump" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "center_nm" << YAML::Value << cfg.pump.center_nm;
    out << YAML::Key << "fwhm_nm" << YAML::Value << cfg.pump.fwhm_nm;
    out << YAML::Key << "lineshape" << YAML::Value << std::string(to_string(cfg.pump.lineshape));
    out << YAML::EndMap;
    out << YAML::Key << "transition" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "wavelength_nm" << YAML::Value << cfg.transition.wavelength_nm;
    out << YAML::Key << "fwhm_nm" << YAML::Value << cfg.transition.fwhm_nm;
    out << YAML::Key << "lineshape" << YAML::Value
        << std::string(to_string(cfg.transition.lineshape));
    out << YAML::EndMap;
    out << YAML::Key << "mask" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "type" << YAML::Value << cfg.mask.type;
    if (cfg.mask.target != "signal") {
        out << YAML::Key << "target" << YAML::Value << cfg.mask.target;
    }
    if (cfg.mask.type == "constant") {
        out << YAML::Key << "phase_rad" << YAML::Value << cfg.mask.phase_rad;
    } else if (cfg.mask.type == "square_wave") {
        out << YAML::Key << "magnitude_rad" << YAML::Value << cfg.mask.magnitude_rad;
        out << YAML::Key << "period_nm" << YAML::Value << cfg.mask.period_nm;
        if (cfg.mask.offset_nm) {
            out << YAML::Key << "offset_nm" << YAML::Value << *cfg.mask.offset_nm;
        }
    } else if (cfg.mask.type == "dispersion") {
        out << YAML::Key << "gdd_fs2" << YAML::Value << cfg.mask.gdd_fs2;
    } else if (cfg.mask.type == "table") {
        out << YAML::Key << "file" << YAML::Value << cfg.mask.file.string();
    }
    out << YAML::EndMap;
    if (cfg.scan) {
        const auto& s = *cfg.scan;
        const std::string unit(axis_unit(s.axis));
        out << YAML::Key << "scan" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "axis" << YAML::Value << std::string(to_string(s.axis));
        out << YAML::Key << "start_" + unit << YAML::Value << s.start;
        out << YAML::Key << "stop_" + unit << YAML::Value << s.stop;
        out << YAML::Key << "steps" << YAML::Value << s.steps;
        if (s.delay_fs != 0.0) {
            out << YAML::Key << "delay_fs" << YAML::Value << s.delay_fs;
        }
        out << YAML::EndMap;
    }
    if (cfg.ocdma) {
        const auto& o = *cfg.ocdma;
        out << YAML::Key << "ocdma" << YAML::Value << YAML::BeginMap;
        if (o.bits_file.empty()) {
            out << YAML::Key << "bits" << YAML::Value << o.bits;
            out << YAML::Key << "bits_seed" << YAML::Value << o.bits_seed;
        } else {
            out << YAML::Key << "bits_file" << YAML::Value << o.bits_file.string();
        }
        out << YAML::Key << "realizations_per_bit" << YAML::Value << o.realizations_per_bit;
        out << YAML::Key << "channel_delays_fs" << YAML::Value << YAML::Flow << o.channel_delays_fs;
        out << YAML::Key << "receive_channel" << YAML::Value << o.receive_channel;
        out << YAML::Key << "wrong_delay_offset_fs" << YAML::Value << o.wrong_delay_offset_fs;
        out << YAML::EndMap;
    } else {
        out << YAML::Key << "realizations" << YAML::Value << cfg.realizations;
    }
    out << YAML::Key << "seed" << YAML::Value << cfg.seed;
    if (cfg.batches != 0) {
        out << YAML::Key << "batches" << YAML::Value << cfg.batches;
    }
    if (!cfg.output.empty()) {
        out << YAML::Key << "output" << YAML::Value << cfg.output.string();
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

Setup build_setup(const RunConfig& cfg)
{
    const double center = units::omega_from_nm(cfg.grid.center_nm);
    const double span = units::omega_width_from_nm(cfg.grid.span_nm, cfg.grid.center_nm);
    FrequencyGrid grid(center, span, cfg.grid.n_bins);
    const double src_center = units::omega_from_nm(cfg.source.center_nm);
    SourceSpec source{grid, cfg.source.envelope, src_center,
                      units::omega_width_from_nm(cfg.source.fwhm_nm, cfg.source.center_nm),
                      cfg.source.photons_per_mode};
    PumpSpec pump = PumpSpec::from_nm(cfg.pump.center_nm, cfg.pump.fwhm_nm, cfg.pump.lineshape);
    TransitionSpec transition = TransitionSpec::from_nm(
        cfg.transition.wavelength_nm, cfg.transition.fwhm_nm, cfg.transition.lineshape);
    PhaseMask mask = build_mask(cfg, src_center);
    return Setup{grid, source, pump, transition, std::move(mask), cfg.mask.target == "idler"};
}

PhaseMask square_wave_with_magnitude(const RunConfig& cfg, double magnitude_rad)
{
    RunConfig copy = cfg;
    copy.mask.magnitude_rad = magnitude_rad;
    return build_mask(copy, units::omega_from_nm(cfg.source.center_nm));
}

}  // namespace dctpa
