#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "spinstat/polarization.hpp"
#include "spinstat/spinor.hpp"
#include "support/test_support.hpp"

using namespace spinstat;
using namespace spinstat::spinor;
using test::random_momentum;
using test::random_multipliers;
using test::random_omega;
using test::uni;

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

TEST_CASE("Clifford algebra and gamma5") {
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            const SpinorMatrix anti = gamma(mu) * gamma(nu) + gamma(nu) * gamma(mu);
            const double expected = mu == nu ? 2.0 * metric_diag(mu) : 0.0;
            CHECK((anti - expected * SpinorMatrix::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
            // tr gamma^mu gamma^nu = 4 g^{mu nu}
            CHECK(std::abs((gamma(mu) * gamma(nu)).trace() -
                           std::complex<double>(4.0 * (mu == nu ? metric_diag(mu) : 0.0))) <= 1e-14);
        }
        CHECK((gamma5() * gamma(mu) + gamma(mu) * gamma5()).cwiseAbs().maxCoeff() <= 1e-14);
    }
    CHECK(((gamma(0) * gamma(0)) - SpinorMatrix::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((gamma(1) * gamma(2) + gamma(2) * gamma(1)).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((gamma5() * gamma5() - SpinorMatrix::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
    // gamma^0 Hermitian, gamma^i anti-Hermitian, gamma5 Hermitian
    CHECK((gamma(0) - gamma(0).adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    for (int i = 1; i < 4; ++i)
        CHECK((gamma(i) + gamma(i).adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((gamma5() - gamma5().adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("trace of gamma5 with four gammas fixes the epsilon sign") {
    // tr(g5 g^mu g^nu g^rho g^sigma) = -4i eps^{mu nu rho sigma}, eps^{0123} = +1
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            for (int rho = 0; rho < 4; ++rho)
                for (int sig = 0; sig < 4; ++sig) {
                    const std::complex<double> tr =
                        (gamma5() * gamma(mu) * gamma(nu) * gamma(rho) * gamma(sig)).trace();
                    const std::complex<double> expected =
                        -4.0 * kI * static_cast<double>(levi_civita(mu, nu, rho, sig));
                    CHECK(std::abs(tr - expected) <= 1e-13);
                }
}

TEST_CASE("bispinors") {
    SUBCASE("rest frame u_1 = sqrt(2m) (1,0,0,0)") {
        const double m = 0.8;
        const Eigen::Vector4cd u1 = bispinor('u', 1, OnShellMomentum({0, 0, 0}, m));
        CHECK(std::abs(u1(0) - std::sqrt(2.0 * m)) <= 1e-14);
        CHECK(std::abs(u1(1)) <= 1e-14);
        CHECK(std::abs(u1(2)) <= 1e-14);
        CHECK(std::abs(u1(3)) <= 1e-14);
    }
    SUBCASE("normalization and completeness at random momenta") {
        std::mt19937_64 rng(41);
        for (int i = 0; i < 50; ++i) {
            const double m = uni(rng, 0.2, 2.0);
            const OnShellMomentum p = random_momentum(rng, m, 5.0 * m);
            const BispinorSet bs = make_bispinors(p);
            for (int r = 0; r < 2; ++r)
                for (int s = 0; s < 2; ++s) {
                    const std::complex<double> uu = (dirac_adjoint(bs.u[r]) * bs.u[s])(0);
                    CHECK(std::abs(uu - std::complex<double>(r == s ? 2.0 * m : 0.0)) <=
                          1e-12 * 2.0 * (p.energy() + m));
                }
            SpinorMatrix sum_u = SpinorMatrix::Zero(), sum_v = SpinorMatrix::Zero();
            for (int r = 0; r < 2; ++r) {
                sum_u += bs.u[r] * dirac_adjoint(bs.u[r]);
                sum_v += bs.v[r] * dirac_adjoint(bs.v[r]);
            }
            const SpinorMatrix ps = slash(p.four_momentum());
            CHECK((sum_u - (ps + m * SpinorMatrix::Identity())).cwiseAbs().maxCoeff() <=
                  1e-12 * (p.energy() + m));
            CHECK((sum_v - (ps - m * SpinorMatrix::Identity())).cwiseAbs().maxCoeff() <=
                  1e-12 * (p.energy() + m));
        }
    }
    SUBCASE("ubar g5 slash(a) u = 2m a*.sigma (and -2m for v)") {
        std::mt19937_64 rng(42);
        for (int i = 0; i < 100; ++i) {
            const double m = uni(rng, 0.2, 2.0);
            const Antisym2Tensor om = random_omega(rng, 2.0);
            const OnShellMomentum p = random_momentum(rng, m, 5.0 * m);
            const BispinorSet bs = make_bispinors(p);
            const SpinorMatrix g5a = gamma5() * slash(spin_four_vector(om, p));
            const Vec3 as = a_star(om, p);
            Eigen::Matrix2cd as_sigma;
            as_sigma << as[2], std::complex<double>(as[0], -as[1]),
                std::complex<double>(as[0], as[1]), -as[2];
            const double scale = 2.0 * m * std::max(1.0, norm3(as)) * (p.energy() + m) / m;
            for (int r = 0; r < 2; ++r)
                for (int s = 0; s < 2; ++s) {
                    const std::complex<double> lhs_u = (dirac_adjoint(bs.u[r]) * g5a * bs.u[s])(0);
                    CHECK(std::abs(lhs_u - 2.0 * m * as_sigma(r, s)) <= 1e-11 * scale);
                    const std::complex<double> lhs_v = (dirac_adjoint(bs.v[s]) * g5a * bs.v[r])(0);
                    CHECK(std::abs(lhs_v + 2.0 * m * as_sigma(r, s)) <= 1e-11 * scale);
                }
        }
    }
}

TEST_CASE("x_matrix") {
    std::mt19937_64 rng(43);
    SUBCASE("omega = 0 collapses to a spin-degenerate scalar") {
        MultiplierSet s = random_multipliers(rng, 0.0);
        s.omega = Antisym2Tensor{};
        const OnShellMomentum p = random_momentum(rng, s.m, 2.0);
        const SpinorMatrix x = x_matrix(s, p, +1);
        const double g = g_fermi_dirac(s, p, ModeLabel{+1, +1});
        CHECK((x - g * SpinorMatrix::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
    }
    SUBCASE("commutes with slash(p)") {
        for (int i = 0; i < 50; ++i) {
            const MultiplierSet s = random_multipliers(rng, 1.5);
            const OnShellMomentum p = random_momentum(rng, s.m, 3.0 * s.m);
            for (int species : {+1, -1}) {
                const SpinorMatrix x = x_matrix(s, p, species);
                const SpinorMatrix ps = slash(p.four_momentum());
                const double scale = std::max(1.0, x.cwiseAbs().maxCoeff()) * p.energy();
                CHECK((x * ps - ps * x).cwiseAbs().maxCoeff() <= 1e-12 * scale);
            }
        }
    }
    SUBCASE("Boltzmann branch equals the matrix exponential") {
        for (int i = 0; i < 30; ++i) {
            const MultiplierSet s = random_multipliers(rng, 1.0);
            const OnShellMomentum p = random_momentum(rng, s.m, 2.0 * s.m);
            const double bp = minkowski_dot(s.beta, p.four_momentum());
            const SpinorMatrix g5a = gamma5() * slash(spin_four_vector(s.omega, p));
            for (int species : {+1, -1}) {
                const SpinorMatrix direct = x_matrix(s, p, species, StatisticsKind::boltzmann);
                const SpinorMatrix via_exp = std::exp(species * s.xi - bp) * g5a.exp();
                const double scale = std::max(1.0, via_exp.cwiseAbs().maxCoeff());
                CHECK((direct - via_exp).cwiseAbs().maxCoeff() <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("spin density from spinors") {
    std::mt19937_64 rng(44);
    SUBCASE("omega = 0: diagonal with equal entries") {
        MultiplierSet s = random_multipliers(rng, 0.0);
        s.omega = Antisym2Tensor{};
        const OnShellMomentum p = random_momentum(rng, s.m, 2.0);
        for (int species : {+1, -1}) {
            const SpinMatrix2 f = spin_density_from_spinors(s, p, species);
            const double g = g_fermi_dirac(s, p, ModeLabel{species, +1});
            CHECK((f - g * SpinMatrix2::Identity()).cwiseAbs().maxCoeff() <= 1e-13);
        }
    }
    SUBCASE("hermitian, PSD, trace and eigenvalues from the occupations") {
        for (int i = 0; i < 100; ++i) {
            const MultiplierSet s = random_multipliers(rng, 1.5);
            const OnShellMomentum p = random_momentum(rng, s.m, 3.0 * s.m);
            for (int species : {+1, -1}) {
                const SpinMatrix2 f = spin_density_from_spinors(s, p, species);
                CHECK((f - f.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
                const double gp = g_fermi_dirac(s, p, ModeLabel{species, +1});
                const double gm = g_fermi_dirac(s, p, ModeLabel{species, -1});
                CHECK(std::abs(f.trace() - std::complex<double>(gp + gm)) <= 1e-12);
                Eigen::SelfAdjointEigenSolver<SpinMatrix2> es(f);
                CHECK(es.eigenvalues()(0) >= -1e-12);
                CHECK(es.eigenvalues()(0) == doctest::Approx(std::min(gp, gm)).epsilon(1e-10));
                CHECK(es.eigenvalues()(1) == doctest::Approx(std::max(gp, gm)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("sigma matrix elements") {
    SUBCASE("sigma^{+12} at rest is the third Pauli matrix") {
        const auto blocks = sigma_matrix_elements(+1, OnShellMomentum({0, 0, 0}, 0.6));
        const SpinMatrix2 sig12 = blocks[3];  // pair order: 01,02,03,12,13,23
        CHECK(std::abs(sig12(0, 0) - 1.0) <= 1e-14);
        CHECK(std::abs(sig12(1, 1) + 1.0) <= 1e-14);
        CHECK(std::abs(sig12(0, 1)) <= 1e-14);
        CHECK(std::abs(sig12(1, 0)) <= 1e-14);
    }
    SUBCASE("definition route for the spin tensor matches the reduced form") {
        // (1/2) sum_rs [sigma^{+mn}_{sr} f^+_{rs} + sigma^{-mn}_{sr} f^-_{rs}]
        //   == (1/2m) sum_ij j g^{ij} eps^{mn}_{ab} a^a p^b / sqrt(-a.a)
        std::mt19937_64 rng(45);
        for (int i = 0; i < 60; ++i) {
            const MultiplierSet s = random_multipliers(rng, 1.5);
            const OnShellMomentum p = random_momentum(rng, s.m, 3.0 * s.m);
            const double sa = a_norm_prf(s.omega, p);
            if (sa < 1e-6) continue;
            const FourVector a = spin_four_vector(s.omega, p);
            const FourVector pf = p.four_momentum();
            const auto sig_p = sigma_matrix_elements(+1, p);
            const auto sig_m = sigma_matrix_elements(-1, p);
            const SpinMatrix2 fp = spin_density_from_spinors(s, p, +1);
            const SpinMatrix2 fm = spin_density_from_spinors(s, p, -1);
            double j_sum = 0.0;
            for (ModeLabel l : all_mode_labels()) j_sum += l.spin * g_fermi_dirac(s, p, l);
            for (int k = 0; k < 6; ++k) {
                const int mu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][0];
                const int nu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][1];
                const std::complex<double> lhs =
                    0.5 * ((sig_p[static_cast<std::size_t>(k)] * fp).trace() +
                           (sig_m[static_cast<std::size_t>(k)] * fm).trace());
                double t = 0.0;
                for (int ga = 0; ga < 4; ++ga)
                    for (int de = 0; de < 4; ++de)
                        t += levi_civita(mu, nu, ga, de) * a.lower(static_cast<std::size_t>(ga)) *
                             pf.lower(static_cast<std::size_t>(de));
                const double rhs = j_sum * t / (2.0 * p.m * sa);
                CHECK(std::abs(lhs - std::complex<double>(rhs)) <=
                      1e-11 * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
            }
        }
    }
}

TEST_CASE("current trace reductions") {
    std::mt19937_64 rng(46);
    SUBCASE("omega = 0 passes with a vanishing spin line") {
        MultiplierSet s = random_multipliers(rng, 0.0);
        s.omega = Antisym2Tensor{};
        const OnShellMomentum p = random_momentum(rng, s.m, 2.0);
        const TraceCheckReport rep = verify_trace_reductions(s, p);
        CHECK(rep.max_residual <= 1e-12);
    }
    SUBCASE("200 random states stay below 1e-10") {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const MultiplierSet s = random_multipliers(rng, 1.5);
            const OnShellMomentum p = random_momentum(rng, s.m, 4.0 * s.m);
            worst = std::max(worst, verify_trace_reductions(s, p).max_residual);
        }
        CHECK(worst < 1e-10);
    }
    SUBCASE("tr(sigma^{mn} g5 slash(a) slash(p)) = 4 eps^{mn}_{ab} a^a p^b") {
        for (int i = 0; i < 50; ++i) {
            const double m = uni(rng, 0.2, 2.0);
            const Antisym2Tensor om = random_omega(rng, 2.0);
            const OnShellMomentum p = random_momentum(rng, m, 3.0 * m);
            const FourVector a = spin_four_vector(om, p);
            const FourVector pf = p.four_momentum();
            const SpinorMatrix g5a_ps = gamma5() * slash(a) * slash(pf);
            for (int k = 0; k < 6; ++k) {
                const int mu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][0];
                const int nu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][1];
                const std::complex<double> tr = (sigma_mu_nu(mu, nu) * g5a_ps).trace();
                double t = 0.0;
                for (int ga = 0; ga < 4; ++ga)
                    for (int de = 0; de < 4; ++de)
                        t += levi_civita(mu, nu, ga, de) * a.lower(static_cast<std::size_t>(ga)) *
                             pf.lower(static_cast<std::size_t>(de));
                CHECK(std::abs(tr - std::complex<double>(4.0 * t)) <=
                      1e-11 * std::max(1.0, std::abs(4.0 * t)));
            }
        }
    }
}
