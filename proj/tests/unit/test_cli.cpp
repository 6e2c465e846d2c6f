#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const fs::path& work_dir()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("dctpa_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args)
{
    const std::string cmd = std::string(DCTPA_CLI_PATH) + " " + args + " > " +
                            (work_dir() / "stdout.txt").string() + " 2> " +
                            (work_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path write_config(const std::string& name, const std::string& text)
{
    const auto p = work_dir() / name;
    std::ofstream(p) << text;
    return p;
}

const std::string kConfig = R"(grid: {center_nm: 1033.3, span_nm: 500, n_bins: 4096}
source: {envelope: gaussian, center_nm: 1033.3, fwhm_nm: 100, photons_per_mode: 1.0e4}
pump: {center_nm: 516.65, fwhm_nm: 0.2, lineshape: lorentzian}
transition: {wavelength_nm: 516.65, fwhm_nm: 0.3, lineshape: lorentzian}
scan: {axis: delay, start_fs: -40, stop_fs: 40, steps: 3}
realizations: 8
seed: 5
)";

}  // namespace

TEST(Cli, ValidateAcceptsAGoodConfig)
{
    EXPECT_EQ(run("validate --config " + write_config("good.yaml", kConfig).string()), 0);
    EXPECT_NE(slurp(work_dir() / "stdout.txt").find("valid (delay scan)"), std::string::npos);
}

TEST(Cli, ValidateReportsEveryIssueAndExitsTwo)
{
    std::string bad = kConfig;
    bad.replace(bad.find("n_bins: 4096"), 12, "n_bins: 1000");
    bad += "colour: red\n";
    EXPECT_EQ(run("validate --config " + write_config("bad.yaml", bad).string()), 2);
    const auto err = slurp(work_dir() / "stderr.txt");
    EXPECT_NE(err.find("colour"), std::string::npos);
    EXPECT_NE(err.find("n_bins must be a power of two"), std::string::npos);
}

TEST(Cli, MissingFileAndUnknownPresetExitTwo)
{
    EXPECT_EQ(run("validate --config " + (work_dir() / "absent.yaml").string()), 2);
    EXPECT_EQ(run("preset fig9 --out " + work_dir().string()), 2);
    EXPECT_EQ(run("frobnicate"), 2);
}

TEST(Cli, RunWritesTheScanCsv)
{
    const auto out = work_dir() / "scan.csv";
    ASSERT_EQ(run("run --config " + write_config("run.yaml", kConfig).string() + " --workers 2 --out " +
                  out.string()),
              0);
    const auto csv = slurp(out);
    EXPECT_EQ(csv.rfind("#schema=1\n# axis=delay unit=fs realizations=8 seed=5\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);

    const auto again = work_dir() / "scan_seed.csv";
    ASSERT_EQ(run("run --config " + (work_dir() / "run.yaml").string() +
                  " --seed 6 --realizations 4 --out " + again.string()),
              0);
    EXPECT_NE(slurp(again).find("realizations=4 seed=6"), std::string::npos);
}

TEST(Cli, OracleWritesTheAnalyticCurve)
{
    ASSERT_EQ(run("oracle --config " + write_config("oracle.yaml", kConfig).string() + " --out -"), 0);
    const auto csv = slurp(work_dir() / "stdout.txt");
    EXPECT_NE(csv.find("axis_value,oracle\n"), std::string::npos);
    EXPECT_NE(csv.find("\n0,1\n"), std::string::npos);
}
