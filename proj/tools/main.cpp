#include "dctpa/harness.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> realizations;
    std::optional<std::size_t> workers;
    std::string out;
};

void apply_overrides(dctpa::RunConfig& cfg, const RunOptions& opt)
{
    if (opt.seed) {
        cfg.seed = *opt.seed;
    }
    if (opt.realizations) {
        if (cfg.ocdma) {
            cfg.ocdma->realizations_per_bit = *opt.realizations;
        } else {
            cfg.realizations = *opt.realizations;
        }
    }
    if (opt.workers) {
        cfg.workers = *opt.workers;
    }
}

void write_to(const fs::path& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw dctpa::ConfigError("out", "cannot write '" + path.string() + "'");
    }
    out << text;
}

/// Runs a validated config and writes its outputs to `out`.
void execute(const dctpa::RunConfig& cfg, const fs::path& out)
{
    if (cfg.ocdma) {
        const auto report = dctpa::run_ocdma(cfg);
        std::ostringstream csv;
        dctpa::ocdma::write_csv(csv, report.matched);
        write_to(out, csv.str());
        if (!out.empty() && out != "-") {
            std::ostringstream bits;
            dctpa::ocdma::write_bits(bits, report.bits);
            fs::path bits_path = out;
            write_to(bits_path.replace_extension(".bits"), bits.str());
        }
        std::cerr << dctpa::ocdma_summary(report);
        return;
    }
    const auto result = dctpa::run_scan(cfg);
    std::ostringstream csv;
    dctpa::write_scan_csv(csv, result);
    write_to(out, csv.str());
}

int cmd_run(const RunOptions& opt)
{
    auto cfg = dctpa::validate_config(opt.config);
    apply_overrides(cfg, opt);
    execute(cfg, opt.out.empty() ? cfg.output : fs::path(opt.out));
    return 0;
}

int cmd_validate(const std::string& path)
{
    const auto cfg = dctpa::validate_config(path);
    std::cout << path << ": valid ("
              << (cfg.scan ? std::string(dctpa::to_string(cfg.scan->axis)) + " scan" : "ocdma")
              << ")\n";
    return 0;
}

int cmd_oracle(const std::string& path, const std::string& out)
{
    const auto cfg = dctpa::validate_config(path);
    std::ostringstream csv;
    dctpa::write_oracle_csv(csv, cfg, dctpa::oracle_curve(cfg));
    write_to(out, csv.str());
    return 0;
}

int cmd_preset(const std::string& name, const std::string& dir, const RunOptions& opt)
{
    auto cfg = dctpa::preset_config(name);
    apply_overrides(cfg, opt);
    const fs::path base(dir);
    fs::create_directories(base);
    write_to(base / (name + ".yaml"), dctpa::to_yaml(cfg));
    const fs::path csv_path = base / cfg.output;
    execute(cfg, csv_path);
    std::cout << "wrote " << csv_path.string() << '\n';
    if (cfg.scan) {
        std::ifstream in(csv_path);
        const auto result = dctpa::read_scan_csv(in);
        for (const auto& check : dctpa::check_preset_shape(name, cfg, result)) {
            std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << ": "
                      << check.detail << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Down-converted light two-photon absorption simulator"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Run a scan or OCDMA config and write CSV");
    run->add_option("--config", run_opt.config, "YAML config")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", run_opt.seed, "Override the seed");
    run->add_option("--realizations", run_opt.realizations, "Override R (per bit for OCDMA)");
    run->add_option("--workers", run_opt.workers, "Threads (0: all cores)");
    run->add_option("--out", run_opt.out, "Output CSV ('-' for stdout)");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a config and report every issue");
    validate->add_option("--config", validate_path, "YAML config")->required();

    std::string preset_name;
    std::string preset_dir;
    RunOptions preset_opt;
    auto* preset = app.add_subcommand("preset", "Write and run a figure preset");
    preset->add_option("name", preset_name, "Preset name")
        ->required()
        ->check(CLI::IsMember(dctpa::preset_names()));
    preset->add_option("--out", preset_dir, "Output directory")->required();
    preset->add_option("--seed", preset_opt.seed, "Override the seed");
    preset->add_option("--realizations", preset_opt.realizations, "Override R");
    preset->add_option("--workers", preset_opt.workers, "Threads (0: all cores)");

    std::string oracle_path;
    std::string oracle_out;
    auto* oracle = app.add_subcommand("oracle", "Write the analytic curve for a scan config");
    oracle->add_option("--config", oracle_path, "YAML config")->required()->check(CLI::ExistingFile);
    oracle->add_option("--out", oracle_out, "Output CSV ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) {
            return cmd_run(run_opt);
        }
        if (*validate) {
            return cmd_validate(validate_path);
        }
        if (*preset) {
            return cmd_preset(preset_name, preset_dir, preset_opt);
        }
        if (*oracle) {
            return cmd_oracle(oracle_path, oracle_out);
        }
    } catch (const dctpa::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const dctpa::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
