#ifndef RECIRC_CONFIG_HPP
#define RECIRC_CONFIG_HPP

#include <string>
#include <vector>

#include "recirc/mesh.hpp"
#include "recirc/params.hpp"
#include "recirc/types.hpp"

namespace recirc {

/// Full run description, parsed from the line-oriented `section.key = value`
/// format. Defaults reproduce the reference reservoir configuration.
struct RunConfig {
    struct Domain {
        double width = 16.0;
        double height = 19.0;
        double h = 0.5;
    } domain;

    struct Time {
        double dt = 1800.0;
        int steps = 96;  // N
    } time;

    struct Physics {
        double nu = 1.3e-3;
        double nu_tur = 5.0e-2;
        double K = 1.4e-5;
        double h_N = 3.0e2;   // W m^-2 K^-1
        double h_S = 3.0e2;
        double rho = 9.9e2;   // table value, g m^-3 as printed
        double c_p = 4.2;     // W s g^-1 K^-1
        double theta0 = 283.0;
        double theta_S = 286.0;
        double theta_N = 283.0;
        double alpha0 = 8.7e-7;
        // placeholder magnitude; physical studies must override (the
        // coefficient table gives no emissivity to derive it from)
        double b2S = 5.5e-8;
        double M_bound = 1.0e-1;
    } physics;

    /// Empty pairs means "use the default 4-pair symmetric layout".
    PumpLayout layout{.pairs = {}, .surface_side = Side::Top};
    bool layout_given = false;

    struct Schedule {
        std::string preset = "NNNN";                // used when rows is empty
        std::vector<std::vector<double>> rows;      // inline: one row of N rates per pump
    } schedule;

    struct Radiation {
        std::string mode = "synthetic";  // synthetic | tabulated
        double base = 278.0;
        double amplitude = 22.0;
        double period = 86400.0;
        std::string file;
        std::vector<double> table_t, table_Tr;  // loaded from file
    } radiation;

    struct Solver {
        double picard_tol = 1e-8;
        int picard_max = 50;
        double constraint_tol = 1e-8;
        double hydro_picard_tol = 1e-6;
        int hydro_picard_max = 30;
        double cg_tol = 1e-10;
        double thermal_cg_tol = 1e-13;
        double uzawa_tol = 1e-6;
        int uzawa_max = 500;
        double uzawa_step = 0.0;  // 0: heuristic from nu, h, dt
    } solver;

    struct Output {
        std::string dir;
        int snapshot_every = 0;  // 0: no snapshots
    } output;

    PhysicalParams physical_params() const;
    PumpLayout effective_layout() const;
    double radiation_temperature(double t) const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& cfg);

}  // namespace recirc

#endif
