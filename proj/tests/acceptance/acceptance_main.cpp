// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, in code.

#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "../support/test_support.hpp"
#include "spinstat/currents.hpp"
#include "spinstat/polarization.hpp"
#include "spinstat/spinor.hpp"
#include "spinstat/thermo.hpp"

using namespace spinstat;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  criterion-%d  %s  (%s)\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

FluidState plain_state() {
    return FluidState(0.14, 0.15, 0.05, FourVector{1, 0, 0, 0}, eb_compose({0, 0, 0}, {0, 0, 0}));
}
FluidState spinful_state() {
    return FluidState(0.3, 0.16, 0.05, four_velocity({0.15, 0.0, 0.1}),
                      eb_compose({0.02, 0.0, 0.0}, {0.0, 0.03, 0.1}));
}
FluidState vortex_005() { return vortex_state({0.15, 0.05 * 0.15, 0.05}, 0.3); }

QuadratureSpec base_spec() {
    QuadratureSpec q;
    q.n_radial = 48;
    q.n_theta = 24;
    q.n_phi = 12;
    q.rel_tol = 1e-9;
    return q;
}

// 1. closed-form f vs the (1/2m) ubar X u / -(1/2m) vbar X v contraction
void criterion_1() {
    std::mt19937_64 rng(20250801);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const MultiplierSet s = test::random_multipliers(rng, 1.5);
        const OnShellMomentum p = test::random_momentum(rng, s.m, 4.0 * s.m);
        for (int species : {+1, -1}) {
            const Eigen::Matrix2cd closed = spin_density_closed(s, p, species);
            const Eigen::Matrix2cd contracted = spinor::spin_density_from_spinors(s, p, species);
            worst = std::max(worst, (closed - contracted).cwiseAbs().maxCoeff());
        }
    }
    report(1, "spinor-oracle equivalence (500 states)", worst < 1e-10,
           "max entrywise residual " + fmt(worst) + ", tol 1e-10");
}

// 2. current trace reductions for the three current reductions
void criterion_2() {
    std::mt19937_64 rng(20250802);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const MultiplierSet s = test::random_multipliers(rng, 1.5);
        const OnShellMomentum p = test::random_momentum(rng, s.m, 4.0 * s.m);
        worst = std::max(worst, spinor::verify_trace_reductions(s, p).max_residual);
    }
    report(2, "current trace reductions (200 pairs)", worst < 1e-10,
           "max residual " + fmt(worst) + ", tol 1e-10");
}

// 3. |P| <= 1/2 on 1e4 states with sqrt(-a.a) up to 20; Boltzmann tanh law
void criterion_3() {
    std::mt19937_64 rng(20250803);
    int violations = 0;
    double max_sa = 0.0, worst_tanh = 0.0;
    for (int i = 0; i < 10000; ++i) {
        MultiplierSet s;
        s.m = test::uni(rng, 0.2, 1.5);
        s.xi = test::symm(rng, 3.0);
        const double temp = test::uni(rng, 0.1, 0.3);
        Vec3 v = test::random_vec3(rng, 0.5);
        if (dot3(v, v) >= 0.9) v = scale3(v, 0.5);
        s.beta = (1.0 / temp) * four_velocity(v);
        s.omega = test::random_omega(rng, 1.0);
        const OnShellMomentum p = test::random_momentum(rng, s.m, 10.0 * s.m);
        // rescale omega so sqrt(-a.a) lands uniformly in (0, 20]
        const double sa_raw = a_norm_prf(s.omega, p);
        if (sa_raw > 1e-12) {
            const double target = test::uni(rng, 0.0, 20.0);
            s.omega = (target / sa_raw) * s.omega;
        }
        const double sa = a_norm_prf(s.omega, p);
        max_sa = std::max(max_sa, sa);

        const Vec3 pol = mean_polarization(s, p);
        if (norm3(pol) > 0.5 + 1e-14) ++violations;
        const Vec3 pol_b = mean_polarization(s, p, StatisticsKind::boltzmann);
        worst_tanh = std::max(worst_tanh, std::abs(norm3(pol_b) - 0.5 * std::tanh(sa)));
    }
    const bool pass = violations == 0 && worst_tanh < 1e-6 && max_sa > 19.0;
    report(3, "polarization bound (1e4 states)", pass,
           std::to_string(violations) + " bound violations, max sqrt(-a.a) " + fmt(max_sa) +
               ", Boltzmann tanh gap " + fmt(worst_tanh) + " (tol 1e-6)");
}

// 4. vortex <P> parallel to +z and monotone in Omega0/T0
void criterion_4() {
    const QuadratureSpec q = base_spec();
    double last = 0.0, worst_transverse = 0.0;
    bool monotone = true, aligned = true;
    for (double ratio : {0.05, 0.1, 0.2}) {
        const FluidState s = vortex_state({0.15, ratio * 0.15, 0.05}, 0.3);
        const Vec3 p_avg = averaged_polarization(s, q);
        const double transverse = std::hypot(p_avg[0], p_avg[1]);
        worst_transverse = std::max(worst_transverse, transverse / std::abs(p_avg[2]));
        if (!(p_avg[2] > 0.0) || transverse > q.rel_tol * std::abs(p_avg[2])) aligned = false;
        if (!(p_avg[2] > last)) monotone = false;
        last = p_avg[2];
    }
    report(4, "vortex alignment and monotonicity", aligned && monotone,
           "max transverse/axial " + fmt(worst_transverse) + " (tol " + fmt(q.rel_tol) +
               "), monotone=" + (monotone ? "yes" : "no"));
}

// 5. Gibbs-Duhem and first law at h = 1e-4 with measured order 2
void criterion_5() {
    const QuadratureSpec q = base_spec();
    const PerturbationSpec pert;  // h = 1e-4 scaled steps
    double worst = 0.0, worst_order_dev = 0.0;
    bool pass = true;
    for (const FluidState& s : {plain_state(), spinful_state(), vortex_005()}) {
        for (int which = 0; which < 2; ++which) {
            const IdentityReport rep = which == 0 ? check_gibbs_duhem(s, q, pert, 1e-5)
                                                  : check_first_law(s, q, pert, 1e-5);
            worst = std::max(worst, rep.max_rel_residual);
            if (!rep.pass) pass = false;
            if (!rep.convergence_order || std::abs(*rep.convergence_order - 2.0) > 0.3)
                pass = false;
            if (rep.convergence_order)
                worst_order_dev = std::max(worst_order_dev, std::abs(*rep.convergence_order - 2.0));
        }
    }
    report(5, "Gibbs-Duhem and first law (3 states)", pass,
           "max residual " + fmt(worst) + " (tol 1e-5), max |order-2| " + fmt(worst_order_dev) +
               " (tol 0.3)");
}

// 6. Euler relation: integrated and exact per-mode versions
void criterion_6() {
    const QuadratureSpec q = base_spec();
    double worst = 0.0;
    bool pass = true;
    for (const FluidState& s : {plain_state(), spinful_state(), vortex_005()}) {
        const IdentityReport rep = check_euler(s, q, 3.0);
        worst = std::max(worst, rep.max_rel_residual);
        if (!rep.pass) pass = false;
    }
    std::mt19937_64 rng(20250806);
    double worst_mode = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const MultiplierSet s = test::random_multipliers(rng, 1.5);
        const OnShellMomentum p = test::random_momentum(rng, s.m, 3.0 * s.m);
        for (ModeLabel l : all_mode_labels())
            worst_mode = std::max(worst_mode, per_mode_euler_residual(s, p, l));
    }
    pass = pass && worst_mode <= 1e-13;
    report(6, "Euler relation", pass,
           "max integrated residual " + fmt(worst) + " (tol " + fmt(3.0 * q.rel_tol) +
               "), per-mode " + fmt(worst_mode) + " (tol 1e-13)");
}

// 7. generating-function derivative relations
void criterion_7() {
    const QuadratureSpec q = base_spec();
    const PerturbationSpec pert;
    bool pass = true;
    double worst_first = 0.0, worst_second = 0.0;
    for (const FluidState& s : {plain_state(), spinful_state()}) {
        const IdentityReport rep = check_generating_function(s, q, pert, 1e-5, 1e-4);
        if (!rep.pass) pass = false;
        for (const auto& e : rep.entries) {
            // entries are scaled by their own tolerance (first 1e-5, second 1e-4)
            if (e.direction.rfind("Ncal_", 0) == 0)
                worst_first = std::max(worst_first, e.residual * 1e-5);
            else
                worst_second = std::max(worst_second, e.residual * 1e-4);
        }
    }
    report(7, "generating function derivatives", pass,
           "max first-derivative residual " + fmt(worst_first) + " (tol 1e-5), second " +
               fmt(worst_second) + " (tol 1e-4)");
}

// 8. Boltzmann reduction rate e^{-Delta} under fugacity suppression
void criterion_8() {
    const QuadratureSpec q = base_spec();
    bool pass = true;
    double worst = 0.0;
    for (const FluidState& s : {plain_state(), spinful_state()}) {
        const IdentityReport rep = check_boltzmann_limit(s, q, 0.2);
        worst = std::max(worst, rep.max_rel_residual);
        if (!rep.pass) pass = false;
    }
    report(8, "Boltzmann limit rate e^{-Delta}", pass,
           "max |ratio/e^2 - 1| " + fmt(worst) + " (tol 0.2)");
}

// 9. 3D engine vs the independent 1D radial oracle; Ncal = P beta
void criterion_9() {
    const QuadratureSpec q = base_spec();
    const double temp = 0.15, mu = 0.05, m = 0.14;
    MultiplierSet s;
    s.m = m;
    s.xi = mu / temp;
    s.beta = FourVector{1.0 / temp, 0, 0, 0};

    auto mode_sum = [&](double e, int sign) {
        const double bp = e / temp;
        return 2.0 * (g_fd_from_w(bp - mu / temp) + sign * g_fd_from_w(bp + mu / temp));
    };
    const double n_oracle = integrate_dP_radial_oracle(
        [&](double, double e) { return e * mode_sum(e, -1); }, s, q);
    const double eps_oracle = integrate_dP_radial_oracle(
        [&](double, double e) { return e * e * mode_sum(e, +1); }, s, q);
    const double ent_oracle = integrate_dP_radial_oracle(
        [&](double, double e) {
            const double bp = e / temp;
            return e * 2.0 *
                   (entropy_mode_from_w(bp - mu / temp) + entropy_mode_from_w(bp + mu / temp));
        },
        s, q);
    const double p_oracle = integrate_dP_radial_oracle(
        [&](double p, double e) { return p * p / 3.0 * mode_sum(e, +1); }, s, q);

    const FourVector n3 = baryon_current(s, q);
    const SymTensor4 t3 = energy_momentum(s, q);
    const FourVector se3 = entropy_current(s, q);
    const FourVector ncal3 = aux_current(s, q);

    const double dn = std::abs(n3[0] - n_oracle) / n_oracle;
    const double de = std::abs(t3(0, 0) - eps_oracle) / eps_oracle;
    const double ds = std::abs(se3[0] - ent_oracle) / ent_oracle;
    const double dp = std::abs(ncal3[0] * temp - p_oracle) / p_oracle;
    double dspatial = 0.0;
    for (int k = 1; k < 4; ++k)
        dspatial = std::max(dspatial, std::abs(ncal3[static_cast<std::size_t>(k)]) / ncal3[0]);

    const bool pass = dn < 1e-8 && de < 1e-8 && ds < 1e-8 && dp < 1e-7 && dspatial < 1e-10;
    report(9, "3D engine vs 1D oracle; Ncal = P beta", pass,
           "number " + fmt(dn) + ", energy " + fmt(de) + ", entropy " + fmt(ds) +
               " (tol 1e-8); |Ncal T - P|/P " + fmt(dp));
}

// 10. Lorentz covariance of every current under three random boosts
void criterion_10() {
    QuadratureSpec q = base_spec();
    q.n_radial = 64;
    q.n_theta = 48;
    q.n_phi = 48;
    const FluidState rest(0.3, 0.16, 0.05, FourVector{1, 0, 0, 0},
                          eb_compose({0.0, 0.03, 0.0}, {0.0, 0.0, 0.12}));
    const MultiplierSet ms_rest = MultiplierSet::from_state(rest);
    const CurrentsBundle b_rest = compute_bundle(ms_rest, q);

    std::mt19937_64 rng(20250810);
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
        Vec3 v = test::random_vec3(rng, 0.6);
        while (norm3(v) > 0.6) v = scale3(v, 0.7);
        const LorentzTransform L = LorentzTransform::boost(v);
        const FluidState boosted(rest.m, rest.T, rest.mu, L.apply(rest.u), L.apply(rest.omega));
        const CurrentsBundle b = compute_bundle(MultiplierSet::from_state(boosted), q);

        // N, Ncal, S_entropy transform as vectors
        for (const auto& pair :
             {std::pair{&b.N, &b_rest.N}, {&b.Ncal, &b_rest.Ncal}, {&b.S_entropy, &b_rest.S_entropy}}) {
            const FourVector expected = L.apply(*pair.second);
            double scale = 0.0;
            for (int mu = 0; mu < 4; ++mu)
                scale = std::max(scale, std::abs(expected[static_cast<std::size_t>(mu)]));
            for (int mu = 0; mu < 4; ++mu)
                worst = std::max(worst, std::abs((*pair.first)[static_cast<std::size_t>(mu)] -
                                                 expected[static_cast<std::size_t>(mu)]) /
                                            scale);
        }
        // T as a rank-2 tensor
        {
            double scale = b_rest.T.max_abs();
            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 4; ++c) {
                    double expected = 0.0;
                    for (int r = 0; r < 4; ++r)
                        for (int d = 0; d < 4; ++d)
                            expected += L.elem(a, r) * L.elem(c, d) * b_rest.T(r, d);
                    worst = std::max(worst, std::abs(b.T(a, c) - expected) / scale);
                }
        }
        // S as a rank-3 tensor
        {
            double scale = b_rest.S.max_abs();
            for (int lam = 0; lam < 4; ++lam)
                for (int a = 0; a < 4; ++a)
                    for (int c = a + 1; c < 4; ++c) {
                        double expected = 0.0;
                        for (int l2 = 0; l2 < 4; ++l2)
                            for (int r = 0; r < 4; ++r)
                                for (int d = 0; d < 4; ++d)
                                    expected += L.elem(lam, l2) * L.elem(a, r) * L.elem(c, d) *
                                                b_rest.S(l2, r, d);
                        worst = std::max(worst, std::abs(b.S(lam, a, c) - expected) / scale);
                    }
        }
        // chi is a scalar
        worst = std::max(worst, std::abs(b.chi - b_rest.chi) / b_rest.chi);
    }
    report(10, "Lorentz covariance (3 boosts, |v| <= 0.6)", worst < 1e-6,
           "max relative deviation " + fmt(worst) + ", tol 1e-6");
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
