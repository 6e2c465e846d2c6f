#include "dctpa/units.hpp"

namespace dctpa::units {

double omega_from_nm(double wavelength_nm)
{
    return two_pi * speed_of_light / (wavelength_nm * 1e-9);
}

double nm_from_omega(double omega)
{
    return two_pi * speed_of_light / omega * 1e9;
}

double omega_width_from_nm(double width_nm, double center_nm)
{
    const double lambda = center_nm * 1e-9;
    return two_pi * speed_of_light * (width_nm * 1e-9) / (lambda * lambda);
}

double nm_width_from_omega(double width_omega, double center_nm)
{
    const double lambda = center_nm * 1e-9;
    return width_omega * lambda * lambda / (two_pi * speed_of_light) * 1e9;
}

}  // namespace dctpa::units
