#include "spinstat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "spinstat/currents.hpp"
#include "spinstat/errors.hpp"
#include "spinstat/io/config.hpp"
#include "spinstat/io/output.hpp"
#include "spinstat/kernels/mode_kernel.hpp"
#include "spinstat/polarization.hpp"
#include "spinstat/spinor.hpp"
#include "spinstat/thermo.hpp"

namespace spinstat::cli {

namespace {

using nlohmann::json;

constexpr int kExitConfig = 1;
constexpr int kExitInadmissible = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitPartialScan = 4;
constexpr int kExitCheckFailed = 5;

// SPINSTAT_THREADS caps whatever the config/flag requests.
void apply_runtime(const RunConfig& cfg, const Options& opt) {
    int requested = opt.threads > 0 ? opt.threads : cfg.threads;
    if (requested > 0) {
        if (const char* env = std::getenv("SPINSTAT_THREADS")) {
            const int cap = std::atoi(env);
            if (cap >= 1) requested = std::min(requested, cap);
        }
        set_worker_count(requested);
    }
    if (cfg.kernel == "scalar") {
        kernels::set_backend(kernels::Backend::scalar);
    } else if (cfg.kernel == "simd") {
        if (!kernels::set_backend(kernels::Backend::simd))
            throw ConfigError("<config>", 0, "kernel", "simd kernel not available on this machine");
    }
}

RunConfig load_config(const Options& opt) {
    if (opt.config_path.empty())
        throw ConfigError("<cli>", 0, "config", "--config is required");
    RunConfig cfg = parse_config_file(opt.config_path);
    if (!opt.out_path.empty()) cfg.out_path = opt.out_path;
    if (!opt.format.empty()) cfg.format = opt.format;
    if (!opt.checks.empty()) cfg.checks = opt.checks;
    return cfg;
}

int report_error(const std::exception& e, int code) {
    std::cerr << "error: " << e.what() << "\n";
    return code;
}

std::string bundle_csv(const CurrentsBundle& b) {
    std::ostringstream out;
    out.precision(17);
    out << "block,component,value,error\n";
    for (int mu = 0; mu < 4; ++mu)
        out << "N," << mu << "," << b.N[static_cast<std::size_t>(mu)] << ","
            << b.N_err[static_cast<std::size_t>(mu)] << "\n";
    int k = 0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu; nu < 4; ++nu, ++k)
            out << "T," << mu << nu << "," << b.T(mu, nu) << ","
                << b.T_err[static_cast<std::size_t>(k)] << "\n";
    for (int lam = 0; lam < 4; ++lam)
        for (int kk = 0; kk < 6; ++kk) {
            const auto& pr = Antisym2Tensor::pairs[static_cast<std::size_t>(kk)];
            out << "S," << lam << "_" << pr[0] << pr[1] << "," << b.S.indep(lam, kk) << ","
                << b.S_err[static_cast<std::size_t>(lam * 6 + kk)] << "\n";
        }
    for (int mu = 0; mu < 4; ++mu)
        out << "Ncal," << mu << "," << b.Ncal[static_cast<std::size_t>(mu)] << ","
            << b.Ncal_err[static_cast<std::size_t>(mu)] << "\n";
    for (int mu = 0; mu < 4; ++mu)
        out << "S_entropy," << mu << "," << b.S_entropy[static_cast<std::size_t>(mu)] << ","
            << b.S_entropy_err[static_cast<std::size_t>(mu)] << "\n";
    out << "chi,0," << b.chi << "," << b.chi_err << "\n";
    return out.str();
}

} // namespace

int cmd_currents(const Options& opt) {
    RunConfig cfg;
    try {
        cfg = load_config(opt);
        apply_runtime(cfg, opt);
    } catch (const ConfigError& e) {
        return report_error(e, kExitConfig);
    }
    try {
        const FluidState state = cfg.make_state();
        const CurrentsBundle bundle = compute_bundle(state, cfg.quadrature);
        const Vec3 mean_p = averaged_polarization(state, cfg.quadrature,
                                                  StatisticsKind::fermi_dirac, opt.particles_only);

        if (cfg.format == "csv") {
            write_output(cfg.out_path, bundle_csv(bundle));
            return 0;
        }
        json j;
        j["config"] = config_echo(cfg);
        j["state"] = state_json(state);
        j["zeta"] = bundle.zeta;
        j["currents"] = bundle_json(bundle);
        j["mean_polarization"] = mean_p;
        j["mean_polarization_particles_only"] = opt.particles_only;
        j["errors"] = bundle_errors_json(bundle);
        j["reports"] = json::array();
        write_output(cfg.out_path, j.dump(2) + "\n");
        return 0;
    } catch (const InadmissibleState& e) {
        return report_error(e, kExitInadmissible);
    } catch (const NotConverged& e) {
        return report_error(e, kExitNotConverged);
    } catch (const std::exception& e) {
        return report_error(e, kExitConfig);
    }
}

int cmd_verify(const Options& opt) {
    RunConfig cfg;
    try {
        cfg = load_config(opt);
        apply_runtime(cfg, opt);
    } catch (const ConfigError& e) {
        return report_error(e, kExitConfig);
    }
    try {
        const FluidState state = cfg.make_state();
        std::vector<std::string> checks = cfg.checks;
        if (checks.empty())
            checks = {"gibbs_duhem", "first_law", "euler", "generating_function", "boltzmann_limit"};

        std::vector<IdentityReport> reports;
        for (const std::string& c : checks) {
            if (c == "gibbs_duhem")
                reports.push_back(check_gibbs_duhem(state, cfg.quadrature, cfg.pert, cfg.tol_gibbs_duhem));
            else if (c == "first_law")
                reports.push_back(check_first_law(state, cfg.quadrature, cfg.pert, cfg.tol_first_law));
            else if (c == "euler")
                reports.push_back(check_euler(state, cfg.quadrature, cfg.tol_euler_mult));
            else if (c == "generating_function")
                reports.push_back(check_generating_function(state, cfg.quadrature, cfg.pert,
                                                            cfg.tol_genfun_first, cfg.tol_genfun_second));
            else if (c == "boltzmann_limit")
                reports.push_back(check_boltzmann_limit(state, cfg.quadrature, cfg.boltzmann_window));
            else
                throw ConfigError("<cli>", 0, "check", "unknown check '" + c + "'");
        }

        bool all_pass = true;
        std::ostringstream summary;
        for (const IdentityReport& r : reports) {
            all_pass = all_pass && r.pass;
            summary << (r.pass ? "PASS " : "FAIL ") << r.identity
                    << "  max_residual=" << r.max_rel_residual << "  tol=" << r.tolerance;
            if (r.convergence_order) summary << "  order=" << *r.convergence_order;
            summary << "\n";
        }
        std::cout << summary.str();

        json j;
        j["config"] = config_echo(cfg);
        j["state"] = state_json(state);
        j["zeta"] = selection_criterion(state);
        j["reports"] = json::array();
        for (const IdentityReport& r : reports) j["reports"].push_back(report_json(r));
        if (!cfg.out_path.empty()) write_output(cfg.out_path, j.dump(2) + "\n");

        return all_pass ? 0 : kExitCheckFailed;
    } catch (const ConfigError& e) {
        return report_error(e, kExitConfig);
    } catch (const InadmissibleState& e) {
        return report_error(e, kExitInadmissible);
    } catch (const InadmissiblePerturbation& e) {
        return report_error(e, kExitInadmissible);
    } catch (const NotConverged& e) {
        return report_error(e, kExitNotConverged);
    } catch (const std::exception& e) {
        return report_error(e, kExitConfig);
    }
}

int cmd_scan(const Options& opt) {
    RunConfig cfg;
    try {
        cfg = load_config(opt);
        apply_runtime(cfg, opt);
        if (cfg.scan.parameter.empty())
            throw ConfigError(opt.config_path, 0, "scan.parameter", "scan requires a [scan] section");
        if (cfg.scan.steps < 2)
            throw ConfigError(opt.config_path, 0, "scan.steps", "steps must be >= 2");
    } catch (const ConfigError& e) {
        return report_error(e, kExitConfig);
    }

    std::ostringstream out;
    out.precision(17);
    out << "parameter,value,zeta,converged,skipped";
    for (int mu = 0; mu < 4; ++mu) out << ",N" << mu;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu; nu < 4; ++nu) out << ",T" << mu << nu;
    for (int lam = 0; lam < 4; ++lam)
        for (int kk = 0; kk < 6; ++kk) {
            const auto& pr = Antisym2Tensor::pairs[static_cast<std::size_t>(kk)];
            out << ",S" << lam << "_" << pr[0] << pr[1];
        }
    for (int mu = 0; mu < 4; ++mu) out << ",Ncal" << mu;
    for (int mu = 0; mu < 4; ++mu) out << ",S_entropy" << mu;
    out << ",chi,meanP_x,meanP_y,meanP_z,meanP_abs\n";

    bool any_failed = false;
    for (int i = 0; i < cfg.scan.steps; ++i) {
        const double value =
            cfg.scan.lo + (cfg.scan.hi - cfg.scan.lo) * i / (cfg.scan.steps - 1);
        RunConfig point = cfg;
        if (cfg.scan.parameter == "T") {
            point.temperature = value;
        } else if (cfg.scan.parameter == "mu") {
            point.mu = value;
        } else if (cfg.scan.parameter == "omega_scale") {
            point.omega_e = scale3(cfg.omega_e, value);
            point.omega_b = scale3(cfg.omega_b, value);
        } else {  // Omega0_over_T0: vortex sampled on the rotation axis
            point.velocity = {0.0, 0.0, 0.0};
            point.omega_e = {0.0, 0.0, 0.0};
            point.omega_b = {0.0, 0.0, -value};
        }

        out << cfg.scan.parameter << "," << value;
        try {
            const FluidState state = point.make_state();
            const CurrentsBundle b = compute_bundle(state, point.quadrature);
            const Vec3 mp = averaged_polarization(state, point.quadrature,
                                                  StatisticsKind::fermi_dirac, opt.particles_only);
            out << "," << b.zeta << ",1,0";
            for (int mu = 0; mu < 4; ++mu) out << "," << b.N[static_cast<std::size_t>(mu)];
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = mu; nu < 4; ++nu) out << "," << b.T(mu, nu);
            for (int lam = 0; lam < 4; ++lam)
                for (int kk = 0; kk < 6; ++kk) out << "," << b.S.indep(lam, kk);
            for (int mu = 0; mu < 4; ++mu) out << "," << b.Ncal[static_cast<std::size_t>(mu)];
            for (int mu = 0; mu < 4; ++mu) out << "," << b.S_entropy[static_cast<std::size_t>(mu)];
            out << "," << b.chi;
            out << "," << mp[0] << "," << mp[1] << "," << mp[2] << "," << norm3(mp);
            out << "\n";
        } catch (const std::exception& e) {
            std::cerr << "scan point " << cfg.scan.parameter << "=" << value
                      << " skipped: " << e.what() << "\n";
            double zeta_value = std::nan("");
            try {
                zeta_value = selection_criterion(point.make_state());
            } catch (const std::exception&) {
            }
            out << "," << zeta_value << ",0,1";
            for (int col = 0; col < 47 + 4; ++col) out << ",";
            out << "\n";
            any_failed = true;
        }
    }

    try {
        write_output(cfg.out_path, out.str());
    } catch (const std::exception& e) {
        return report_error(e, kExitConfig);
    }
    return any_failed ? kExitPartialScan : 0;
}

int cmd_oracle(const Options& opt) {
    if (opt.trials < 1) {
        std::cerr << "error: --trials must be >= 1\n";
        return kExitConfig;
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto symm = [&]() { return 2.0 * uni(rng) - 1.0; };

    double max_trace = 0.0, max_density = 0.0;
    for (int trial = 0; trial < opt.trials; ++trial) {
        // draw admissible multipliers; reject the rare over-polarized draws
        MultiplierSet s;
        for (;;) {
            s.m = 0.2 + 1.3 * uni(rng);
            const double temp = 0.1 + 0.2 * uni(rng);
            s.xi = 2.0 * symm();
            Vec3 v{0.6 * symm(), 0.6 * symm(), 0.6 * symm()};
            if (dot3(v, v) >= 0.8) v = scale3(v, 0.5);
            s.beta = (1.0 / temp) * four_velocity(v);
            const double omega_scale = 1.5 * uni(rng);
            s.omega = eb_compose(scale3(Vec3{symm(), symm(), symm()}, omega_scale),
                                 scale3(Vec3{symm(), symm(), symm()}, omega_scale));
            if (selection_criterion(s) < 0.9) break;
        }
        const double p_scale = (1.0 + 4.0 * uni(rng)) * std::max(s.m, s.temperature());
        const OnShellMomentum p(scale3(Vec3{symm(), symm(), symm()}, p_scale), s.m);

        const spinor::TraceCheckReport rep = spinor::verify_trace_reductions(s, p);
        max_trace = std::max(max_trace, rep.max_residual);

        for (int species : {+1, -1}) {
            const Eigen::Matrix2cd closed = spin_density_closed(s, p, species);
            const Eigen::Matrix2cd contracted = spinor::spin_density_from_spinors(s, p, species);
            max_density = std::max(max_density, (closed - contracted).cwiseAbs().maxCoeff());
        }
    }

    const double max_residual = std::max(max_trace, max_density);
    const bool pass = max_residual < 1e-10;
    std::cout << (pass ? "PASS" : "FAIL") << " oracle  trials=" << opt.trials
              << "  seed=" << opt.seed << "  max_trace_residual=" << max_trace
              << "  max_density_residual=" << max_density << "\n";

    if (!opt.out_path.empty()) {
        json j = {{"trials", opt.trials},
                  {"seed", opt.seed},
                  {"max_trace_residual", max_trace},
                  {"max_density_residual", max_density},
                  {"pass", pass}};
        try {
            write_output(opt.out_path, j.dump(2) + "\n");
        } catch (const std::exception& e) {
            return report_error(e, kExitConfig);
        }
    }
    return pass ? 0 : kExitCheckFailed;
}

} // namespace spinstat::cli
