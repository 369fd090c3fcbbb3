#pragma once

#include <string>
#include <vector>

#include "spinstat/quadrature.hpp"
#include "spinstat/statistics.hpp"
#include "spinstat/thermo.hpp"

namespace spinstat {

// Key-value config with [section] headers; all quantities in GeV (the tool
// does no unit conversion). Unknown keys are rejected with a line/field
// diagnostic so typos cannot silently fall back to defaults.
//
//   [state]      mass, temperature, mu, velocity, omega.e, omega.b
//   [quadrature] n_radial, n_theta, n_phi, p_max_mult, rel_tol,
//                max_refinements, admissibility_margin, kernel, threads
//   [verify]     h_xi, h_beta, h_omega, h_second, scheme, order_probe_scale,
//                checks, tol_gibbs_duhem, tol_first_law, tol_euler_mult,
//                tol_genfun_first, tol_genfun_second, boltzmann_window
//   [scan]       parameter (T | mu | omega_scale | Omega0_over_T0), lo, hi, steps
//   [output]     format (json | csv), path
struct RunConfig {
    // state
    double mass = 0.5;
    double temperature = 0.15;
    double mu = 0.0;
    Vec3 velocity{0.0, 0.0, 0.0};
    Vec3 omega_e{0.0, 0.0, 0.0};
    Vec3 omega_b{0.0, 0.0, 0.0};

    QuadratureSpec quadrature;
    std::string kernel = "auto";  // auto | scalar | simd
    int threads = 0;              // 0: leave the global worker count alone

    // verify
    PerturbationSpec pert;
    std::vector<std::string> checks;  // empty: run all
    double tol_gibbs_duhem = 1e-5;
    double tol_first_law = 1e-5;
    double tol_euler_mult = 3.0;
    double tol_genfun_first = 1e-5;
    double tol_genfun_second = 1e-4;
    double boltzmann_window = 0.2;

    // scan
    struct Scan {
        std::string parameter;
        double lo = 0.0;
        double hi = 0.0;
        int steps = 0;
    } scan;

    // output
    std::string format = "json";
    std::string out_path;

    FluidState make_state() const;
};

// Throws ConfigError with file:line diagnostics.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& name);

} // namespace spinstat
