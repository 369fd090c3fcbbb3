#include "spinstat/thermo.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "spinstat/errors.hpp"

namespace spinstat {

namespace {

using StepFn = std::function<MultiplierSet(const MultiplierSet&, double)>;

MultiplierSet bump_xi(const MultiplierSet& s, double h) {
    MultiplierSet r = s;
    r.xi += h;
    return r;
}

// Bump the covariant component beta_lam (the identities contract with free
// dbeta_lam), i.e. beta^lam += g^{lam lam} h.
MultiplierSet bump_beta_cov(const MultiplierSet& s, int lam, double h) {
    MultiplierSet r = s;
    r.beta[static_cast<std::size_t>(lam)] += metric_diag(lam) * h;
    return r;
}

// Bump the covariant independent pair omega_{mu nu} (mu < nu), adjusting the
// contravariant storage: omega_{0i} = -omega^{0i}, omega_{ij} = omega^{ij}.
MultiplierSet bump_omega_cov(const MultiplierSet& s, int k, double h) {
    MultiplierSet r = s;
    const int mu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][0];
    r.omega.indep(k) += (mu == 0 ? -h : h);
    return r;
}

double h_beta_of(const PerturbationSpec& pert, double temperature) {
    return pert.h_beta > 0.0 ? pert.h_beta : 1e-4 / temperature;
}

// Step for the convergence-order probe: large enough that truncation
// dominates the (h-independent) quadrature bias, but capped at a small
// fraction of beta^0 so the probe can never leave the timelike cone.
double order_probe_step(const PerturbationSpec& pert, const MultiplierSet& base) {
    const double hb = h_beta_of(pert, base.temperature());
    return std::min(pert.order_probe_scale * hb, 0.02 * base.beta[0]);
}

struct Direction {
    std::string name;
    StepFn step;
    double h;
};

std::vector<Direction> identity_directions(const MultiplierSet& base, const PerturbationSpec& pert) {
    std::vector<Direction> dirs;
    dirs.push_back({"xi", [](const MultiplierSet& s, double h) { return bump_xi(s, h); }, pert.h_xi});
    const double hb = h_beta_of(pert, base.temperature());
    for (int lam = 0; lam < 4; ++lam) {
        dirs.push_back({"beta_" + std::to_string(lam),
                        [lam](const MultiplierSet& s, double h) { return bump_beta_cov(s, lam, h); },
                        hb});
    }
    for (int k = 0; k < 6; ++k) {
        const auto& pr = Antisym2Tensor::pairs[static_cast<std::size_t>(k)];
        dirs.push_back({"omega_" + std::to_string(pr[0]) + std::to_string(pr[1]),
                        [k](const MultiplierSet& s, double h) { return bump_omega_cov(s, k, h); },
                        pert.h_omega});
    }
    return dirs;
}

std::array<double, 6> omega_lower_indep(const Antisym2Tensor& omega) {
    std::array<double, 6> w{};
    for (int k = 0; k < 6; ++k)
        w[static_cast<std::size_t>(k)] = (k < 3 ? -1.0 : 1.0) * omega.indep(k);
    return w;
}

template <class Eval>
auto central_difference(const Eval& eval, const MultiplierSet& base, const Direction& dir,
                        double h, PerturbationSpec::Scheme scheme) {
    auto diff_at = [&](double step) {
        auto hi = eval(dir.step(base, +step));
        auto lo = eval(dir.step(base, -step));
        for (std::size_t i = 0; i < hi.size(); ++i) hi[i] = (hi[i] - lo[i]) / (2.0 * step);
        return hi;
    };
    if (scheme == PerturbationSpec::Scheme::richardson) {
        auto d1 = diff_at(h);
        auto d2 = diff_at(0.5 * h);
        for (std::size_t i = 0; i < d1.size(); ++i) d1[i] = (4.0 * d2[i] - d1[i]) / 3.0;
        return d1;
    }
    return diff_at(h);
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

FrozenCurrents::FrozenCurrents(const MultiplierSet& base, const QuadratureSpec& q)
    : grid_([&] {
          // converge the broadest integral once to pick the frozen level
          const IntegralResult probe =
              evaluate_current(CurrentKind::energy_momentum, base, q, StatisticsKind::fermi_dirac);
          return MomentumGrid(base, q, q.n_radial << probe.refinements_used);
      }()),
      margin_(q.admissibility_margin) {}

void FrozenCurrents::gate(const MultiplierSet& s) const {
    const double zeta = selection_criterion(s);
    if (!(zeta < 1.0 - margin_)) throw InadmissibleState(zeta, margin_);
}

CurrentsOnGrid FrozenCurrents::eval(const MultiplierSet& s, StatisticsKind stats,
                                    double suppression) const {
    gate(s);
    return evaluate_all_on_grid(s, grid_, stats, suppression);
}

double FrozenCurrents::eval_chi(const MultiplierSet& s, StatisticsKind stats,
                                double suppression) const {
    gate(s);
    return evaluate_generating_on_grid(s, grid_, stats, suppression);
}

IdentityReport check_gibbs_duhem(const FluidState& state, const QuadratureSpec& q,
                                 const PerturbationSpec& pert, double tol) {
    const MultiplierSet base = MultiplierSet::from_state(state);
    const FrozenCurrents fc(base, q);
    const CurrentsOnGrid c0 = fc.eval(base);

    auto eval_ncal = [&](const MultiplierSet& s) {
        const CurrentsOnGrid c = fc.eval(s);
        return std::vector<double>{c.Ncal[0], c.Ncal[1], c.Ncal[2], c.Ncal[3]};
    };

    IdentityReport rep;
    rep.identity = "gibbs_duhem";
    rep.tolerance = tol;

    std::vector<std::vector<double>> lhs_all, rhs_all;
    const auto dirs = identity_directions(base, pert);
    for (std::size_t d = 0; d < dirs.size(); ++d) {
        const Direction& dir = dirs[d];
        std::vector<double> lhs;
        try {
            lhs = central_difference(eval_ncal, base, dir, dir.h, pert.scheme);
        } catch (const InadmissibleState&) {
            throw InadmissiblePerturbation(dir.name);
        }
        std::vector<double> rhs(4);
        if (d == 0) {
            for (int mu = 0; mu < 4; ++mu) rhs[static_cast<std::size_t>(mu)] = c0.N[static_cast<std::size_t>(mu)];
        } else if (d <= 4) {
            const int lam = static_cast<int>(d) - 1;
            for (int mu = 0; mu < 4; ++mu) rhs[static_cast<std::size_t>(mu)] = -c0.T(mu, lam);
        } else {
            const int k = static_cast<int>(d) - 5;
            for (int mu = 0; mu < 4; ++mu) rhs[static_cast<std::size_t>(mu)] = c0.S.indep(mu, k);
        }
        lhs_all.push_back(std::move(lhs));
        rhs_all.push_back(std::move(rhs));
    }

    double scale = 0.0;
    for (std::size_t d = 0; d < dirs.size(); ++d)
        scale = std::max({scale, max_abs(lhs_all[d]), max_abs(rhs_all[d])});
    for (std::size_t d = 0; d < dirs.size(); ++d) {
        double res = 0.0;
        for (int mu = 0; mu < 4; ++mu)
            res = std::max(res, std::abs(lhs_all[d][static_cast<std::size_t>(mu)] -
                                         rhs_all[d][static_cast<std::size_t>(mu)]));
        const double rel = scale > 0.0 ? res / scale : 0.0;
        rep.entries.push_back({dirs[d].name, rel});
        rep.max_rel_residual = std::max(rep.max_rel_residual, rel);
    }

    // convergence-order probe along beta_0, where truncation dominates
    {
        const double big_h = order_probe_step(pert, base);
        auto residual_at = [&](double h) {
            auto lhs = central_difference(eval_ncal, base, dirs[1], h,
                                          PerturbationSpec::Scheme::central);
            double r = 0.0;
            for (int mu = 0; mu < 4; ++mu)
                r = std::max(r, std::abs(lhs[static_cast<std::size_t>(mu)] -
                                         rhs_all[1][static_cast<std::size_t>(mu)]));
            return r;
        };
        const double r1 = residual_at(big_h);
        const double r2 = residual_at(0.5 * big_h);
        if (r1 > 0.0 && r2 > 0.0) rep.convergence_order = std::log2(r1 / r2);
    }

    rep.pass = rep.max_rel_residual <= rep.tolerance;
    return rep;
}

IdentityReport check_first_law(const FluidState& state, const QuadratureSpec& q,
                               const PerturbationSpec& pert, double tol) {
    const MultiplierSet base = MultiplierSet::from_state(state);
    const FrozenCurrents fc(base, q);

    const std::array<double, 6> w_low = omega_lower_indep(base.omega);
    std::array<double, 4> beta_low{};
    for (int lam = 0; lam < 4; ++lam) beta_low[static_cast<std::size_t>(lam)] = base.beta.lower(static_cast<std::size_t>(lam));

    // pack (N, T, S, S_entropy) into one vector so each direction costs two evals
    auto eval_pack = [&](const MultiplierSet& s) {
        const CurrentsOnGrid c = fc.eval(s);
        std::vector<double> v;
        v.reserve(4 + 16 + 24 + 4);
        for (int mu = 0; mu < 4; ++mu) v.push_back(c.N[static_cast<std::size_t>(mu)]);
        for (int lam = 0; lam < 4; ++lam)
            for (int mu = 0; mu < 4; ++mu) v.push_back(c.T(lam, mu));
        for (int mu = 0; mu < 4; ++mu)
            for (int k = 0; k < 6; ++k) v.push_back(c.S.indep(mu, k));
        for (int mu = 0; mu < 4; ++mu) v.push_back(c.S_entropy[static_cast<std::size_t>(mu)]);
        return v;
    };

    auto rhs_from_pack = [&](const std::vector<double>& dpack) {
        std::vector<double> rhs(4, 0.0);
        for (int mu = 0; mu < 4; ++mu) {
            double r = -base.xi * dpack[static_cast<std::size_t>(mu)];
            for (int lam = 0; lam < 4; ++lam)
                r += beta_low[static_cast<std::size_t>(lam)] *
                     dpack[static_cast<std::size_t>(4 + lam * 4 + mu)];
            for (int k = 0; k < 6; ++k)
                r -= w_low[static_cast<std::size_t>(k)] *
                     dpack[static_cast<std::size_t>(20 + mu * 6 + k)];
            rhs[static_cast<std::size_t>(mu)] = r;
        }
        return rhs;
    };
    auto lhs_from_pack = [](const std::vector<double>& dpack) {
        return std::vector<double>(dpack.begin() + 44, dpack.begin() + 48);
    };

    IdentityReport rep;
    rep.identity = "first_law";
    rep.tolerance = tol;

    const auto dirs = identity_directions(base, pert);
    std::vector<std::vector<double>> lhs_all, rhs_all;
    for (const Direction& dir : dirs) {
        std::vector<double> dpack;
        try {
            dpack = central_difference(eval_pack, base, dir, dir.h, pert.scheme);
        } catch (const InadmissibleState&) {
            throw InadmissiblePerturbation(dir.name);
        }
        lhs_all.push_back(lhs_from_pack(dpack));
        rhs_all.push_back(rhs_from_pack(dpack));
    }

    double scale = 0.0;
    for (std::size_t d = 0; d < dirs.size(); ++d)
        scale = std::max({scale, max_abs(lhs_all[d]), max_abs(rhs_all[d])});
    for (std::size_t d = 0; d < dirs.size(); ++d) {
        double res = 0.0;
        for (int mu = 0; mu < 4; ++mu)
            res = std::max(res, std::abs(lhs_all[d][static_cast<std::size_t>(mu)] -
                                         rhs_all[d][static_cast<std::size_t>(mu)]));
        const double rel = scale > 0.0 ? res / scale : 0.0;
        rep.entries.push_back({dirs[d].name, rel});
        rep.max_rel_residual = std::max(rep.max_rel_residual, rel);
    }

    {
        const double big_h = order_probe_step(pert, base);
        auto residual_at = [&](double h) {
            auto dpack = central_difference(eval_pack, base, dirs[1], h,
                                            PerturbationSpec::Scheme::central);
            const auto lhs = lhs_from_pack(dpack);
            const auto rhs = rhs_from_pack(dpack);
            double r = 0.0;
            for (int mu = 0; mu < 4; ++mu)
                r = std::max(r, std::abs(lhs[static_cast<std::size_t>(mu)] -
                                         rhs[static_cast<std::size_t>(mu)]));
            return r;
        };
        const double r1 = residual_at(big_h);
        const double r2 = residual_at(0.5 * big_h);
        if (r1 > 0.0 && r2 > 0.0) rep.convergence_order = std::log2(r1 / r2);
    }

    rep.pass = rep.max_rel_residual <= rep.tolerance;
    return rep;
}

IdentityReport check_euler(const FluidState& state, const QuadratureSpec& q, double tol_multiple) {
    const MultiplierSet base = MultiplierSet::from_state(state);
    const FrozenCurrents fc(base, q);
    const CurrentsOnGrid c = fc.eval(base);

    const std::array<double, 6> w_low = omega_lower_indep(base.omega);

    IdentityReport rep;
    rep.identity = "euler";
    rep.tolerance = tol_multiple * q.rel_tol;

    double scale = 0.0;
    std::array<double, 4> residual{};
    for (int mu = 0; mu < 4; ++mu) {
        const double t_sent = c.S_entropy[static_cast<std::size_t>(mu)];
        const double t_xin = base.xi * c.N[static_cast<std::size_t>(mu)];
        double t_bt = 0.0;
        for (int lam = 0; lam < 4; ++lam)
            t_bt += base.beta.lower(static_cast<std::size_t>(lam)) * c.T(lam, mu);
        double t_ws = 0.0;
        for (int k = 0; k < 6; ++k) t_ws += w_low[static_cast<std::size_t>(k)] * c.S.indep(mu, k);
        const double t_ncal = c.Ncal[static_cast<std::size_t>(mu)];
        residual[static_cast<std::size_t>(mu)] = t_sent + t_xin - t_bt + t_ws - t_ncal;
        scale = std::max({scale, std::abs(t_sent), std::abs(t_xin), std::abs(t_bt),
                          std::abs(t_ws), std::abs(t_ncal)});
    }
    for (int mu = 0; mu < 4; ++mu) {
        const double rel = scale > 0.0 ? std::abs(residual[static_cast<std::size_t>(mu)]) / scale : 0.0;
        rep.entries.push_back({"component_" + std::to_string(mu), rel});
        rep.max_rel_residual = std::max(rep.max_rel_residual, rel);
    }
    rep.pass = rep.max_rel_residual <= rep.tolerance;
    return rep;
}

IdentityReport check_generating_function(const FluidState& state, const QuadratureSpec& q,
                                         const PerturbationSpec& pert, double tol_first,
                                         double tol_second) {
    const MultiplierSet base = MultiplierSet::from_state(state);
    const FrozenCurrents fc(base, q);
    const CurrentsOnGrid c0 = fc.eval(base);
    const double chi0 = fc.eval_chi(base);

    const double temp = base.temperature();
    const double hb1 = h_beta_of(pert, temp);
    const double hx2 = pert.h_second;
    const double hb2 = pert.h_second / temp;
    const double hw2 = pert.h_second;

    auto chi_at = [&](const MultiplierSet& s) { return fc.eval_chi(s); };

    IdentityReport rep;
    rep.identity = "generating_function";
    // mixed tolerances: every entry is stored relative to its own tolerance,
    // so the report-level threshold is 1.
    rep.tolerance = 1.0;

    auto push = [&](const std::string& name, double raw_rel, double tol) {
        const double scaled = raw_rel / tol;
        rep.entries.push_back({name, scaled});
        rep.max_rel_residual = std::max(rep.max_rel_residual, scaled);
    };

    // first derivative: Ncal^lam = -dchi/dbeta_lam
    {
        const double scale = std::max({std::abs(c0.Ncal[0]), std::abs(c0.Ncal[1]),
                                       std::abs(c0.Ncal[2]), std::abs(c0.Ncal[3])});
        for (int lam = 0; lam < 4; ++lam) {
            const double d = (chi_at(bump_beta_cov(base, lam, +hb1)) -
                              chi_at(bump_beta_cov(base, lam, -hb1))) /
                             (2.0 * hb1);
            const double lhs = -d;
            const double rhs = c0.Ncal[static_cast<std::size_t>(lam)];
            const double raw = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
            push("Ncal_" + std::to_string(lam), raw, tol_first);
        }
    }

    auto mixed = [&](const StepFn& da, double ha, const StepFn& db, double hbv) {
        const double pp = chi_at(db(da(base, +ha), +hbv));
        const double pm = chi_at(db(da(base, +ha), -hbv));
        const double mp = chi_at(db(da(base, -ha), +hbv));
        const double mm = chi_at(db(da(base, -ha), -hbv));
        return ((pp - pm) - (mp - mm)) / (4.0 * ha * hbv);
    };
    auto step_xi = [](const MultiplierSet& s, double h) { return bump_xi(s, h); };
    auto step_beta = [](int lam) {
        return StepFn([lam](const MultiplierSet& s, double h) { return bump_beta_cov(s, lam, h); });
    };
    auto step_omega = [](int k) {
        return StepFn([k](const MultiplierSet& s, double h) { return bump_omega_cov(s, k, h); });
    };

    // N^lam = -d2chi / dxi dbeta_lam
    {
        double scale = 0.0;
        for (int mu = 0; mu < 4; ++mu) scale = std::max(scale, std::abs(c0.N[static_cast<std::size_t>(mu)]));
        for (int lam = 0; lam < 4; ++lam) {
            const double lhs = -mixed(step_xi, hx2, step_beta(lam), hb2);
            const double rhs = c0.N[static_cast<std::size_t>(lam)];
            const double raw = scale > 0.0 ? std::abs(lhs - rhs) / scale
                                           : (lhs == 0.0 ? 0.0 : std::abs(lhs));
            push("N_" + std::to_string(lam), raw, tol_second);
        }
    }

    // T^{lam mu} = d2chi / dbeta_lam dbeta_mu
    {
        const double scale = c0.T.max_abs();
        for (int lam = 0; lam < 4; ++lam) {
            for (int mu = lam; mu < 4; ++mu) {
                double lhs;
                if (lam == mu) {
                    const double cp = chi_at(bump_beta_cov(base, lam, +hb2));
                    const double cm = chi_at(bump_beta_cov(base, lam, -hb2));
                    lhs = (cp - 2.0 * chi0 + cm) / (hb2 * hb2);
                } else {
                    lhs = mixed(step_beta(lam), hb2, step_beta(mu), hb2);
                }
                const double rhs = c0.T(lam, mu);
                const double raw = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
                push("T_" + std::to_string(lam) + std::to_string(mu), raw, tol_second);
            }
        }
    }

    // S^{lam, mn} = -d2chi / dbeta_lam domega_mn
    {
        const double s_scale = c0.S.max_abs();
        const double t_scale = c0.T.max_abs();  // fallback units when S == 0
        for (int lam = 0; lam < 4; ++lam) {
            for (int k = 0; k < 6; ++k) {
                const double lhs = -mixed(step_beta(lam), hb2, step_omega(k), hw2);
                const double rhs = c0.S.indep(lam, k);
                const auto& pr = Antisym2Tensor::pairs[static_cast<std::size_t>(k)];
                const double scale = s_scale > 0.0 ? s_scale : t_scale * temp;
                const double raw = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
                push("S_" + std::to_string(lam) + "_" + std::to_string(pr[0]) + std::to_string(pr[1]),
                     raw, tol_second);
            }
        }
    }

    rep.pass = rep.max_rel_residual <= rep.tolerance;
    return rep;
}

IdentityReport check_boltzmann_limit(const FluidState& state, const QuadratureSpec& q,
                                     double rate_window) {
    const MultiplierSet base = MultiplierSet::from_state(state);
    const FrozenCurrents fc(base, q);

    struct Gap {
        std::string name;
        std::array<double, 3> gap{};
        bool usable = true;
    };

    const std::array<double, 3> deltas{4.0, 6.0, 8.0};
    std::vector<Gap> gaps;
    gaps.push_back({"N", {}, true});
    gaps.push_back({"T", {}, true});
    gaps.push_back({"S", {}, true});
    gaps.push_back({"Ncal", {}, true});
    gaps.push_back({"S_entropy", {}, true});
    gaps.push_back({"chi", {}, true});

    for (std::size_t di = 0; di < deltas.size(); ++di) {
        const CurrentsOnGrid fd = fc.eval(base, StatisticsKind::fermi_dirac, deltas[di]);
        const CurrentsOnGrid bz = fc.eval(base, StatisticsKind::boltzmann, deltas[di]);

        auto four_gap = [](const FourVector& a, const FourVector& b) {
            double num = 0.0, den = 0.0;
            for (int mu = 0; mu < 4; ++mu) {
                num = std::max(num, std::abs(a[static_cast<std::size_t>(mu)] - b[static_cast<std::size_t>(mu)]));
                den = std::max(den, std::abs(b[static_cast<std::size_t>(mu)]));
            }
            return std::pair<double, double>{num, den};
        };
        auto record = [&](Gap& g, double num, double den, double ref_scale) {
            if (den < 1e-13 * std::max(ref_scale, 1e-300)) {
                g.usable = false;
                return;
            }
            g.gap[di] = num / den;
        };

        const double scale4 = std::max({std::abs(bz.Ncal[0]), std::abs(bz.Ncal[1]),
                                        std::abs(bz.Ncal[2]), std::abs(bz.Ncal[3])});
        {
            auto [num, den] = four_gap(fd.N, bz.N);
            record(gaps[0], num, den, scale4);
        }
        {
            double num = 0.0, den = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    num = std::max(num, std::abs(fd.T(a, b) - bz.T(a, b)));
                    den = std::max(den, std::abs(bz.T(a, b)));
                }
            record(gaps[1], num, den, den);
        }
        {
            double num = 0.0, den = 0.0;
            for (int lam = 0; lam < 4; ++lam)
                for (int k = 0; k < 6; ++k) {
                    num = std::max(num, std::abs(fd.S.indep(lam, k) - bz.S.indep(lam, k)));
                    den = std::max(den, std::abs(bz.S.indep(lam, k)));
                }
            record(gaps[2], num, den, scale4);
        }
        {
            auto [num, den] = four_gap(fd.Ncal, bz.Ncal);
            record(gaps[3], num, den, scale4);
        }
        {
            auto [num, den] = four_gap(fd.S_entropy, bz.S_entropy);
            record(gaps[4], num, den, scale4);
        }
        {
            const double num = std::abs(fd.chi - bz.chi);
            const double den = std::abs(bz.chi);
            record(gaps[5], num, den, den);
        }
    }

    IdentityReport rep;
    rep.identity = "boltzmann_limit";
    rep.tolerance = rate_window;
    const double e2 = std::exp(2.0);
    for (const Gap& g : gaps) {
        if (!g.usable) continue;
        for (int step = 0; step < 2; ++step) {
            if (!(g.gap[static_cast<std::size_t>(step + 1)] > 0.0)) continue;
            const double ratio = g.gap[static_cast<std::size_t>(step)] /
                                 g.gap[static_cast<std::size_t>(step + 1)];
            const double dev = std::abs(ratio / e2 - 1.0);
            rep.entries.push_back({g.name + "_rate_" + std::to_string(step), dev});
            rep.max_rel_residual = std::max(rep.max_rel_residual, dev);
        }
    }
    rep.pass = rep.max_rel_residual <= rep.tolerance;
    return rep;
}

double per_mode_euler_residual(const MultiplierSet& s, const OnShellMomentum& p, ModeLabel label,
                               StatisticsKind kind) {
    const double w = mode_exponent(s, p, label);
    const double g = kind == StatisticsKind::fermi_dirac ? g_fd_from_w(w) : std::exp(-w);
    const double sa = a_norm_prf(s.omega, p);
    const FourVector a = spin_four_vector(s.omega, p);
    const FourVector pf = p.four_momentum();
    const double bp = minkowski_dot(s.beta, pf);

    // -(1/2) omega_ab s^{ab}_mode with the spin integrand routed through the
    // explicit Levi-Civita contraction
    double term_omega = 0.0;
    if (sa >= 1e-12) {
        const std::array<double, 6> w_low = omega_lower_indep(s.omega);
        for (int k = 0; k < 6; ++k) {
            const int mu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][0];
            const int nu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][1];
            double t = 0.0;
            for (int ga = 0; ga < 4; ++ga)
                for (int de = 0; de < 4; ++de)
                    t += levi_civita(mu, nu, ga, de) * a.lower(static_cast<std::size_t>(ga)) *
                         pf.lower(static_cast<std::size_t>(de));
            term_omega += w_low[static_cast<std::size_t>(k)] * label.spin * g * t /
                          (2.0 * p.m * sa);
        }
    }

    const double lhs = kind == StatisticsKind::fermi_dirac ? entropy_mode(g)
                                                           : g * (1.0 - std::log(g));
    const double pressure = kind == StatisticsKind::fermi_dirac ? softplus(-w) : g;
    const double rhs = -label.species * s.xi * g + bp * g - term_omega + pressure;
    const double scale = std::max({1.0, std::abs(bp * g), std::abs(term_omega), std::abs(lhs)});
    return std::abs(lhs - rhs) / scale;
}

} // namespace spinstat
