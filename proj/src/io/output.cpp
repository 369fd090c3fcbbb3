#include "spinstat/io/output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "spinstat/kernels/mode_kernel.hpp"

namespace spinstat {

using nlohmann::json;

json config_echo(const RunConfig& cfg) {
    json j;
    j["state"] = {{"mass", cfg.mass},
                  {"temperature", cfg.temperature},
                  {"mu", cfg.mu},
                  {"velocity", cfg.velocity},
                  {"omega.e", cfg.omega_e},
                  {"omega.b", cfg.omega_b}};
    j["quadrature"] = {{"n_radial", cfg.quadrature.n_radial},
                       {"n_theta", cfg.quadrature.n_theta},
                       {"n_phi", cfg.quadrature.n_phi},
                       {"p_max_mult", cfg.quadrature.p_max_mult},
                       {"rel_tol", cfg.quadrature.rel_tol},
                       {"max_refinements", cfg.quadrature.max_refinements},
                       {"admissibility_margin", cfg.quadrature.admissibility_margin},
                       {"kernel", kernels::backend_name(kernels::active_backend())},
                       {"threads", worker_count()}};
    j["verify"] = {{"h_xi", cfg.pert.h_xi},
                   {"h_beta", cfg.pert.h_beta},
                   {"h_omega", cfg.pert.h_omega},
                   {"h_second", cfg.pert.h_second},
                   {"order_probe_scale", cfg.pert.order_probe_scale},
                   {"scheme", cfg.pert.scheme == PerturbationSpec::Scheme::central ? "central"
                                                                                   : "richardson"},
                   {"checks", cfg.checks},
                   {"tol_gibbs_duhem", cfg.tol_gibbs_duhem},
                   {"tol_first_law", cfg.tol_first_law},
                   {"tol_euler_mult", cfg.tol_euler_mult},
                   {"tol_genfun_first", cfg.tol_genfun_first},
                   {"tol_genfun_second", cfg.tol_genfun_second},
                   {"boltzmann_window", cfg.boltzmann_window}};
    if (!cfg.scan.parameter.empty()) {
        j["scan"] = {{"parameter", cfg.scan.parameter},
                     {"lo", cfg.scan.lo},
                     {"hi", cfg.scan.hi},
                     {"steps", cfg.scan.steps}};
    }
    j["output"] = {{"format", cfg.format}, {"path", cfg.out_path}};
    return j;
}

json state_json(const FluidState& s) {
    const EBDecomposition eb = eb_decompose(s.omega);
    return {{"m", s.m},
            {"T", s.T},
            {"mu", s.mu},
            {"u", s.u.c},
            {"omega", {{"e", eb.e}, {"b", eb.b}}},
            {"xi", s.xi()},
            {"beta", s.beta().c}};
}

namespace {

json four_json(const FourVector& v) { return json(v.c); }

json sym_json(const SymTensor4& t) {
    json rows = json::array();
    for (int mu = 0; mu < 4; ++mu) {
        json row = json::array();
        for (int nu = 0; nu < 4; ++nu) row.push_back(t(mu, nu));
        rows.push_back(row);
    }
    return rows;
}

json spin_json(const SpinTensor3& s) {
    // full 4x4x4 expansion, antisymmetry in the last two indices made explicit
    json lam_arr = json::array();
    for (int lam = 0; lam < 4; ++lam) {
        json rows = json::array();
        for (int mu = 0; mu < 4; ++mu) {
            json row = json::array();
            for (int nu = 0; nu < 4; ++nu) row.push_back(s(lam, mu, nu));
            rows.push_back(row);
        }
        lam_arr.push_back(rows);
    }
    return lam_arr;
}

} // namespace

json bundle_json(const CurrentsBundle& b) {
    return {{"N", four_json(b.N)},     {"T", sym_json(b.T)},
            {"S", spin_json(b.S)},     {"Ncal", four_json(b.Ncal)},
            {"S_entropy", four_json(b.S_entropy)}, {"chi", b.chi}};
}

json bundle_errors_json(const CurrentsBundle& b) {
    return {{"N", b.N_err},           {"T", b.T_err},
            {"S", b.S_err},           {"Ncal", b.Ncal_err},
            {"S_entropy", b.S_entropy_err}, {"chi", b.chi_err},
            {"refinements_used", b.max_refinements_used}};
}

json report_json(const IdentityReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) entries.push_back({{"direction", e.direction}, {"residual", e.residual}});
    json j = {{"identity", r.identity},
              {"max_rel_residual", r.max_rel_residual},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"entries", entries}};
    if (r.convergence_order) j["convergence_order"] = *r.convergence_order;
    return j;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("atomic rename to " + path + " failed");
}

} // namespace spinstat
