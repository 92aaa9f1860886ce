#ifndef RECIRC_PARAMS_HPP
#define RECIRC_PARAMS_HPP

#include "recirc/types.hpp"

namespace recirc {

/// Physical coefficients of the coupled model (SI units).
struct PhysicalParams {
    double nu = 1.3e-3;       // kinematic viscosity, m^2/s
    double nu_tur = 5.0e-2;   // turbulent viscosity, m^2
    double K = 1.4e-5;        // thermal diffusivity, m^2/s
    double b1N = 7.215e-2;    // convective exchange on the lateral/bottom boundary, m/s
    double b1S = 7.215e-2;    // convective exchange on the surface, m/s
    double b2S = 5.5e-8;      // radiative exchange on the surface, m s K^-3
    double alpha0 = 8.7e-7;   // thermal expansion, 1/K
    Vec2 a_g{0.0, -9.81};     // gravity acceleration, m/s^2
    double theta0 = 283.0;    // initial temperature, K
    double theta_S = 286.0;   // surface convection temperature, K
    double theta_N = 283.0;   // lateral/bottom convection temperature, K
    double pump_bound = 0.1;  // |g| bound, m^3/s per unit width
};

}  // namespace recirc

#endif
