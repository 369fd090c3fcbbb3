#include <doctest.h>

#include <cmath>
#include <random>

#include "spinstat/currents.hpp"
#include "spinstat/statistics.hpp"
#include "support/test_support.hpp"

using namespace spinstat;

namespace {

MultiplierSet rest_multipliers(double m, double temp, double mu, const Vec3& e, const Vec3& b) {
    MultiplierSet s;
    s.m = m;
    s.xi = mu / temp;
    s.beta = FourVector{1.0 / temp, 0.0, 0.0, 0.0};
    s.omega = eb_compose(e, b);
    return s;
}

// mode-summed isotropic radial weights for the omega = 0 oracles
double mode_sum_fd(double e, double temp, double mu, int signed_by_species) {
    const double bp = e / temp;
    const double gp = g_fd_from_w(bp - mu / temp);
    const double gm = g_fd_from_w(bp + mu / temp);
    return 2.0 * (gp + signed_by_species * gm);  // 2 spin states per species
}

} // namespace

TEST_CASE("baryon current") {
    QuadratureSpec q;
    SUBCASE("mu = 0, omega = 0: exact particle-antiparticle cancellation") {
        const MultiplierSet s = rest_multipliers(0.14, 0.15, 0.0, {0, 0, 0}, {0, 0, 0});
        const FourVector n = baryon_current(s, q);
        const FourVector ncal = aux_current(s, q);
        for (int mu = 0; mu < 4; ++mu)
            CHECK(std::abs(n[static_cast<std::size_t>(mu)]) <= 1e-12 * std::abs(ncal[0]));
    }
    SUBCASE("omega = 0 rest state matches the 1D FD oracle") {
        const double temp = 0.15, mu = 0.05, m = 0.14;
        const MultiplierSet s = rest_multipliers(m, temp, mu, {0, 0, 0}, {0, 0, 0});
        const FourVector n = baryon_current(s, q);
        const double oracle = integrate_dP_radial_oracle(
            [&](double, double e) { return e * mode_sum_fd(e, temp, mu, -1); }, s, q);
        CHECK(n[0] == doctest::Approx(oracle).epsilon(1e-8));
        for (int k = 1; k < 4; ++k) CHECK(std::abs(n[static_cast<std::size_t>(k)]) <= 1e-12 * oracle);
    }
    SUBCASE("transforms as a four-vector under boosts") {
        std::mt19937_64 rng(71);
        const FluidState rest(0.3, 0.16, 0.04, FourVector{1, 0, 0, 0},
                              eb_compose({0.05, 0, 0}, {0, 0, 0.15}));
        const Vec3 v{0.4, -0.2, 0.1};
        const LorentzTransform L = LorentzTransform::boost(v);
        const FluidState boosted(rest.m, rest.T, rest.mu, L.apply(rest.u), L.apply(rest.omega));
        QuadratureSpec qa = q;
        qa.n_theta = 48;
        qa.n_phi = 48;
        const FourVector n_rest = baryon_current(MultiplierSet::from_state(rest), qa);
        const FourVector n_boost = baryon_current(MultiplierSet::from_state(boosted), qa);
        const FourVector expected = L.apply(n_rest);
        for (int mu = 0; mu < 4; ++mu)
            CHECK(n_boost[static_cast<std::size_t>(mu)] ==
                  doctest::Approx(expected[static_cast<std::size_t>(mu)]).epsilon(1e-7));
    }
}

TEST_CASE("energy-momentum tensor") {
    QuadratureSpec q;
    const double temp = 0.15, mu = 0.05, m = 0.14;
    const MultiplierSet s = rest_multipliers(m, temp, mu, {0, 0, 0}, {0, 0, 0});
    const SymTensor4 t = energy_momentum(s, q);
    SUBCASE("rest frame: diag(eps, P, P, P) against the 1D oracles") {
        const double eps_oracle = integrate_dP_radial_oracle(
            [&](double, double e) { return e * e * mode_sum_fd(e, temp, mu, +1); }, s, q);
        const double p_oracle = integrate_dP_radial_oracle(
            [&](double p, double e) { return p * p / 3.0 * mode_sum_fd(e, temp, mu, +1); }, s, q);
        CHECK(t(0, 0) == doctest::Approx(eps_oracle).epsilon(1e-8));
        for (int k = 1; k < 4; ++k) CHECK(t(k, k) == doctest::Approx(p_oracle).epsilon(1e-8));
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) CHECK(std::abs(t(a, b)) <= 1e-12 * eps_oracle);
        CHECK(t(0, 0) > 0.0);
    }
    SUBCASE("mass-shell trace identity g_mn T^{mn} = m^2 sum int dP g") {
        double trace = 0.0;
        for (int mu = 0; mu < 4; ++mu) trace += metric_diag(mu) * t(mu, mu);
        BatchIntegrand scalar = [&](const NodeBatch& nb, std::span<double> out) {
            for (std::size_t i = 0; i < nb.size(); ++i)
                out[i] = mode_sum_fd(nb.energy[i], temp, mu, +1);
        };
        const double scalar_int = integrate_dP(1, scalar, s, q).value[0];
        CHECK(trace == doctest::Approx(m * m * scalar_int).epsilon(1e-7));
    }
    SUBCASE("conformal limit: eps -> 3P as m -> 0") {
        const double tiny_m = temp / 100.0;
        const MultiplierSet s0 = rest_multipliers(tiny_m, temp, 0.0, {0, 0, 0}, {0, 0, 0});
        const SymTensor4 t0 = energy_momentum(s0, q);
        CHECK(t0(0, 0) == doctest::Approx(3.0 * t0(1, 1)).epsilon(5e-3));
    }
}

TEST_CASE("spin tensor") {
    QuadratureSpec q;
    SUBCASE("omega = 0 vanishes identically") {
        const MultiplierSet s = rest_multipliers(0.2, 0.15, 0.03, {0, 0, 0}, {0, 0, 0});
        CHECK(spin_tensor(s, q).max_abs() == 0.0);
    }
    SUBCASE("linear response in the overall omega scale") {
        const Vec3 e{0.02, -0.01, 0.0}, b{0.0, 0.03, 0.05};
        auto at_scale = [&](double eps) {
            const MultiplierSet s = rest_multipliers(0.3, 0.15, 0.04, scale3(e, eps), scale3(b, eps));
            SpinTensor3 t = spin_tensor(s, q);
            for (double& c : t.c) c /= eps;
            return t;
        };
        const SpinTensor3 s2 = at_scale(1e-2), s3 = at_scale(1e-3);
        const double scale = std::max(s2.max_abs(), 1e-300);
        for (int lam = 0; lam < 4; ++lam)
            for (int k = 0; k < 6; ++k)
                CHECK(std::abs(s2.indep(lam, k) - s3.indep(lam, k)) <= 1e-2 * scale);
    }
    SUBCASE("antisymmetric accessor") {
        const MultiplierSet s = rest_multipliers(0.3, 0.15, 0.04, {0.02, 0, 0}, {0, 0, 0.1});
        const SpinTensor3 t = spin_tensor(s, q);
        for (int lam = 0; lam < 4; ++lam)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    CHECK(t(lam, a, b) == -t(lam, b, a));
    }
}

TEST_CASE("auxiliary current") {
    QuadratureSpec q;
    const double temp = 0.15, mu = 0.05, m = 0.14;
    SUBCASE("ideal-gas identity Ncal = P beta at omega = 0") {
        const MultiplierSet s = rest_multipliers(m, temp, mu, {0, 0, 0}, {0, 0, 0});
        const FourVector ncal = aux_current(s, q);
        // pressure from the kinetic route: P = (1/3) int dP p^2 sum g
        const double p_kinetic = integrate_dP_radial_oracle(
            [&](double p, double e) { return p * p / 3.0 * mode_sum_fd(e, temp, mu, +1); }, s, q);
        CHECK(ncal[0] == doctest::Approx(p_kinetic / temp).epsilon(1e-7));
        for (int k = 1; k < 4; ++k) CHECK(std::abs(ncal[static_cast<std::size_t>(k)]) <= 1e-10 * ncal[0]);
        CHECK(ncal[0] > 0.0);
    }
    SUBCASE("low-fugacity reduction to the Boltzmann auxiliary current") {
        const MultiplierSet s = rest_multipliers(m, temp, 0.0, {0, 0, 0}, {0, 0, 0});
        const double delta = 6.0;
        const IntegralResult fd =
            evaluate_current(CurrentKind::aux, s, q, StatisticsKind::fermi_dirac, delta);
        const IntegralResult bz =
            evaluate_current(CurrentKind::aux, s, q, StatisticsKind::boltzmann, delta);
        const double gap = std::abs(fd.value[0] - bz.value[0]) / std::abs(bz.value[0]);
        CHECK(gap < 2.0 * std::exp(-delta));
        CHECK(gap > 0.0);
    }
}

TEST_CASE("entropy current and generating function") {
    QuadratureSpec q;
    const double temp = 0.15, m = 0.14;
    SUBCASE("omega = 0, mu = 0: entropy density against the 1D oracle") {
        const MultiplierSet s = rest_multipliers(m, temp, 0.0, {0, 0, 0}, {0, 0, 0});
        const FourVector se = entropy_current(s, q);
        const double oracle = integrate_dP_radial_oracle(
            [&](double, double e) { return e * 4.0 * entropy_mode_from_w(e / temp); }, s, q);
        CHECK(se[0] == doctest::Approx(oracle).epsilon(1e-8));
        CHECK(se[0] > 0.0);
    }
    SUBCASE("chi: literal bracket route equals the kernel route") {
        const MultiplierSet s = rest_multipliers(m, temp, 0.04, {0.03, 0, 0}, {0, 0, 0.12});
        const double chi_kernel = generating_function(s, q);
        // re-integrate through statistics::chi_mode (literal form with its
        // own dilogarithm branch selection)
        BatchIntegrand literal = [&](const NodeBatch& nb, std::span<double> out) {
            for (std::size_t i = 0; i < nb.size(); ++i) {
                const OnShellMomentum p({nb.px[i], nb.py[i], nb.pz[i]}, m);
                double sum = 0.0;
                for (ModeLabel l : all_mode_labels()) {
                    const double g = g_fermi_dirac(s, p, l);
                    sum += chi_mode(g);
                }
                out[i] = sum;
            }
        };
        const double chi_literal = integrate_dP(1, literal, s, q).value[0];
        CHECK(chi_kernel == doctest::Approx(chi_literal).epsilon(1e-10));
        CHECK(chi_kernel > 0.0);
    }
    SUBCASE("low-fugacity reduction of chi to sum int dP g") {
        const MultiplierSet s = rest_multipliers(m, temp, 0.0, {0, 0, 0}, {0, 0, 0});
        const double delta = 6.0;
        const IntegralResult fd =
            evaluate_current(CurrentKind::generating, s, q, StatisticsKind::fermi_dirac, delta);
        const IntegralResult bz =
            evaluate_current(CurrentKind::generating, s, q, StatisticsKind::boltzmann, delta);
        CHECK(std::abs(fd.value[0] - bz.value[0]) / bz.value[0] < std::exp(-delta));
    }
}

TEST_CASE("bundle") {
    QuadratureSpec q;
    q.n_radial = 32;
    q.n_theta = 16;
    q.n_phi = 16;
    const FluidState state(0.3, 0.16, 0.04, four_velocity({0.2, 0.1, 0.0}),
                           eb_compose({0.02, 0.0, 0.01}, {0.0, 0.05, 0.1}));
    const CurrentsBundle b = compute_bundle(state, q);
    CHECK(b.zeta < 1.0);
    CHECK(b.zeta > 0.0);
    SUBCASE("T symmetric to the stated tolerance, S antisymmetric by storage") {
        for (int mu2 = 0; mu2 < 4; ++mu2)
            for (int nu = 0; nu < 4; ++nu) {
                CHECK(b.T(mu2, nu) == b.T(nu, mu2));
                for (int lam = 0; lam < 4; ++lam) CHECK(b.S(lam, mu2, nu) == -b.S(lam, nu, mu2));
            }
    }
    SUBCASE("all entries finite with finite error estimates") {
        for (double v : b.T.c) CHECK(std::isfinite(v));
        for (double v : b.S.c) CHECK(std::isfinite(v));
        for (double v : b.N_err) CHECK(v >= 0.0);
        CHECK(std::isfinite(b.chi));
    }
    SUBCASE("grid evaluation agrees with the refined path") {
        const MultiplierSet ms = MultiplierSet::from_state(state);
        const MomentumGrid grid(ms, q, q.n_radial * 4);
        const CurrentsOnGrid cg = evaluate_all_on_grid(ms, grid, StatisticsKind::fermi_dirac);
        CHECK(cg.N[0] == doctest::Approx(b.N[0]).epsilon(1e-6));
        CHECK(cg.chi == doctest::Approx(b.chi).epsilon(1e-6));
        CHECK(cg.T(0, 0) == doctest::Approx(b.T(0, 0)).epsilon(1e-6));
    }
}

TEST_CASE("currents Lorentz covariance (single boost spot check)") {
    QuadratureSpec q;
    q.n_theta = 48;
    q.n_phi = 48;
    const FluidState rest(0.3, 0.16, 0.05, FourVector{1, 0, 0, 0},
                          eb_compose({0.0, 0.03, 0.0}, {0.0, 0.0, 0.12}));
    const Vec3 v{0.0, 0.0, 0.45};
    const LorentzTransform L = LorentzTransform::boost(v);
    const FluidState boosted(rest.m, rest.T, rest.mu, L.apply(rest.u), L.apply(rest.omega));

    const SymTensor4 t_rest = energy_momentum(MultiplierSet::from_state(rest), q);
    const SymTensor4 t_boost = energy_momentum(MultiplierSet::from_state(boosted), q);
    double scale = t_rest.max_abs();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double expected = 0.0;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) expected += L.elem(a, c) * L.elem(b, d) * t_rest(c, d);
            CHECK(std::abs(t_boost(a, b) - expected) <= 1e-6 * scale);
        }
}
