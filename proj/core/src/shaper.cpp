#include "dctpa/shaper.hpp"

#include "dctpa/errors.hpp"
#include "dctpa/units.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace dctpa {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double term_phase(const mask::Term& term, double omega)
{
    return std::visit(
        Overloaded{
            [](const mask::Constant& c) { return c.phase; },
            [omega](const mask::Delay& d) { return omega * d.tau; },
            [omega](const mask::Dispersion& d) {
                const double x = omega - d.reference_omega;
                return 0.5 * d.gdd * x * x;
            },
            [omega](const mask::SquareWave& s) {
                const double cycles = (omega - s.offset) / s.period;
                const double frac = cycles - std::floor(cycles);
                return frac >= 0.5 ? s.magnitude : 0.0;
            },
            [omega](const mask::Tabulated& t) {
                const auto& pts = t.points;
                if (pts.empty() || omega < pts.front().first || omega > pts.back().first) {
                    return 0.0;
                }
                auto it = std::lower_bound(pts.begin(), pts.end(), omega,
                                           [](const auto& p, double w) { return p.first < w; });
                if (it == pts.end()) {
                    return pts.back().second;
                }
                if (it != pts.begin()) {
                    auto prev = std::prev(it);
                    if (omega - prev->first < it->first - omega) {
                        return prev->second;
                    }
                }
                return it->second;
            },
        },
        term);
}

void check_resolvable(const PhaseMask& m, const FrequencyGrid& grid)
{
    for (const auto& term : m.terms()) {
        if (const auto* sw = std::get_if<mask::SquareWave>(&term)) {
            if (sw->period < 4.0 * grid.bin_width()) {
                throw ConfigError("mask.period", "square-wave period is below 4 grid bins");
            }
        }
    }
}

}  // namespace

PhaseMask PhaseMask::constant(double phase)
{
    return PhaseMask(mask::Constant{phase});
}

PhaseMask PhaseMask::delay(double tau_s)
{
    return PhaseMask(mask::Delay{tau_s});
}

PhaseMask PhaseMask::dispersion(double gdd_s2, double reference_omega)
{
    return PhaseMask(mask::Dispersion{gdd_s2, reference_omega});
}

PhaseMask PhaseMask::tabulated(std::vector<std::pair<double, double>> omega_phase)
{
    std::sort(omega_phase.begin(), omega_phase.end());
    return PhaseMask(mask::Tabulated{std::move(omega_phase)});
}

PhaseMask PhaseMask::compose(const std::vector<PhaseMask>& masks)
{
    PhaseMask out;
    for (const auto& m : masks) {
        out.terms_.insert(out.terms_.end(), m.terms_.begin(), m.terms_.end());
    }
    return out;
}

PhaseMask PhaseMask::then(const PhaseMask& next) const
{
    return compose({*this, next});
}

double PhaseMask::phase(double omega) const
{
    double total = 0.0;
    for (const auto& term : terms_) {
        total += term_phase(term, omega);
    }
    return total;
}

PhaseMask square_wave_mask(double magnitude, double period, double offset)
{
    if (!std::isfinite(magnitude) || !std::isfinite(offset)) {
        throw ConfigError("mask", "square-wave parameters must be finite");
    }
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw ConfigError("mask.period", "square-wave period must be positive");
    }
    return PhaseMask(mask::SquareWave{magnitude, period, offset});
}

void apply_mask_inplace(SpectralField& field, const PhaseMask& mask)
{
    if (mask.empty()) {
        return;
    }
    const auto& grid = field.grid();
    check_resolvable(mask, grid);
    auto amp = field.amplitude();
    for (std::size_t k = 0; k < amp.size(); ++k) {
        const double raw = mask.phase(grid.omega(k));
        if (!std::isfinite(raw)) {
            throw ConfigError("mask", "non-finite phase value");
        }
        double wrapped = std::fmod(raw, units::two_pi);
        if (wrapped < 0.0) {
            wrapped += units::two_pi;
        }
        if (wrapped == 0.0) {
            continue;
        }
        amp[k] *= std::polar(1.0, wrapped);
    }
}

SpectralField apply_mask(const SpectralField& field, const PhaseMask& mask)
{
    SpectralField out = field;
    apply_mask_inplace(out, mask);
    return out;
}

PhaseMask load_phase_table(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("mask.file", "cannot open phase table '" + path.string() + "'");
    }
    std::vector<std::pair<double, double>> rows;  // (nm, rad)
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        double nm = 0.0;
        double phase = 0.0;
        if (!(fields >> nm)) {
            continue;  // blank
        }
        if (!(fields >> phase) || !std::isfinite(nm) || !std::isfinite(phase) || nm <= 0.0) {
            throw ConfigError("mask.file", path.string() + ":" + std::to_string(line_no) +
                                               ": expected 'wavelength_nm phase_rad'");
        }
        rows.emplace_back(nm, phase);
    }
    if (rows.empty()) {
        throw ConfigError("mask.file", "phase table '" + path.string() + "' has no rows");
    }
    const bool ascending = rows.size() < 2 || rows[1].first > rows[0].first;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const bool ok = ascending ? rows[i].first > rows[i - 1].first
                                  : rows[i].first < rows[i - 1].first;
        if (!ok) {
            throw ConfigError("mask.file", "phase table wavelengths must be strictly monotone");
        }
    }
    std::vector<std::pair<double, double>> omega_phase;
    omega_phase.reserve(rows.size());
    for (const auto& [nm, phase] : rows) {
        omega_phase.emplace_back(units::omega_from_nm(nm), phase);
    }
    return PhaseMask::tabulated(std::move(omega_phase));
}

}  // namespace dctpa
