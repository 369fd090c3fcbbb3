#include "spinstat/spinor.hpp"

#include <cmath>
#include <stdexcept>

namespace spinstat::spinor {

namespace {

using C = std::complex<double>;
constexpr C kI{0.0, 1.0};

SpinMatrix2 pauli(int i) {
    SpinMatrix2 s;
    switch (i) {
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -kI, kI, 0; break;
        case 3: s << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("pauli: index must be 1..3");
    }
    return s;
}

SpinorMatrix build_gamma(int mu) {
    SpinorMatrix g = SpinorMatrix::Zero();
    if (mu == 0) {
        g.block<2, 2>(0, 0) = SpinMatrix2::Identity();
        g.block<2, 2>(2, 2) = -SpinMatrix2::Identity();
    } else {
        g.block<2, 2>(0, 2) = pauli(mu);
        g.block<2, 2>(2, 0) = -pauli(mu);
    }
    return g;
}

// Smooth coefficient (g^{i+} - g^{i-})/sqrt(-a.a); below 1e-10 the ratio is
// replaced by its limit so the product with slash(a) -> 0 stays finite.
double spin_coefficient(double g_plus, double g_minus, double sa, StatisticsKind kind) {
    if (sa >= 1e-10) return (g_plus - g_minus) / sa;
    if (kind == StatisticsKind::fermi_dirac) return 2.0 * g_plus * (1.0 - g_plus);
    return 2.0 * g_plus;
}

} // namespace

const SpinorMatrix& gamma(int mu) {
    static const std::array<SpinorMatrix, 4> g = {build_gamma(0), build_gamma(1), build_gamma(2),
                                                  build_gamma(3)};
    if (mu < 0 || mu > 3) throw std::invalid_argument("gamma: index must be 0..3");
    return g[static_cast<std::size_t>(mu)];
}

const SpinorMatrix& gamma5() {
    static const SpinorMatrix g5 = kI * gamma(0) * gamma(1) * gamma(2) * gamma(3);
    return g5;
}

SpinorMatrix sigma_mu_nu(int mu, int nu) {
    return 0.5 * kI * (gamma(mu) * gamma(nu) - gamma(nu) * gamma(mu));
}

SpinorMatrix slash(const FourVector& a) {
    SpinorMatrix s = SpinorMatrix::Zero();
    for (int mu = 0; mu < 4; ++mu) s += a.lower(static_cast<std::size_t>(mu)) * gamma(mu);
    return s;
}

BispinorSet make_bispinors(const OnShellMomentum& p) {
    const double e_p = p.energy();
    const double m = p.m;
    const double norm = std::sqrt(e_p + m);
    SpinMatrix2 sp = SpinMatrix2::Zero();
    for (int i = 1; i <= 3; ++i) sp += p.p[static_cast<std::size_t>(i - 1)] * pauli(i);
    sp /= (e_p + m);

    const Eigen::Vector2cd phi[2] = {Eigen::Vector2cd(1, 0), Eigen::Vector2cd(0, 1)};
    const Eigen::Vector2cd eta[2] = {Eigen::Vector2cd(0, 1), Eigen::Vector2cd(-1, 0)};

    BispinorSet bs;
    for (int r = 0; r < 2; ++r) {
        bs.u[static_cast<std::size_t>(r)].head<2>() = norm * phi[r];
        bs.u[static_cast<std::size_t>(r)].tail<2>() = norm * (sp * phi[r]);
        bs.v[static_cast<std::size_t>(r)].head<2>() = norm * (sp * eta[r]);
        bs.v[static_cast<std::size_t>(r)].tail<2>() = norm * eta[r];
    }

    // construction-time sanity: normalization and the free Dirac equation
    const double tol = 1e-11 * (e_p + m);
    const SpinorMatrix ps = slash(p.four_momentum());
    for (int r = 0; r < 2; ++r) {
        for (int s = 0; s < 2; ++s) {
            const C uu = (dirac_adjoint(bs.u[static_cast<std::size_t>(r)]) * bs.u[static_cast<std::size_t>(s)])(0);
            const C vv = (dirac_adjoint(bs.v[static_cast<std::size_t>(r)]) * bs.v[static_cast<std::size_t>(s)])(0);
            const double du = std::abs(uu - (r == s ? C(2.0 * m) : C(0.0)));
            const double dv = std::abs(vv - (r == s ? C(-2.0 * m) : C(0.0)));
            if (du > tol || dv > tol)
                throw std::runtime_error("make_bispinors: normalization check failed");
        }
        if (((ps - m * SpinorMatrix::Identity()) * bs.u[static_cast<std::size_t>(r)]).norm() > tol ||
            ((ps + m * SpinorMatrix::Identity()) * bs.v[static_cast<std::size_t>(r)]).norm() > tol)
            throw std::runtime_error("make_bispinors: Dirac equation check failed");
    }
    return bs;
}

Eigen::Vector4cd bispinor(char species, int r, const OnShellMomentum& p) {
    if (r < 1 || r > 2) throw std::invalid_argument("bispinor: r must be 1 or 2");
    const BispinorSet bs = make_bispinors(p);
    if (species == 'u') return bs.u[static_cast<std::size_t>(r - 1)];
    if (species == 'v') return bs.v[static_cast<std::size_t>(r - 1)];
    throw std::invalid_argument("bispinor: species must be 'u' or 'v'");
}

Eigen::RowVector4cd dirac_adjoint(const Eigen::Vector4cd& psi) {
    return psi.adjoint() * gamma(0);
}

SpinorMatrix x_matrix(const MultiplierSet& s, const OnShellMomentum& p, int species,
                      StatisticsKind kind) {
    const double sa = a_norm_prf(s.omega, p);
    const FourVector a = spin_four_vector(s.omega, p);
    const double g_plus =
        kind == StatisticsKind::fermi_dirac ? g_fermi_dirac(s, p, ModeLabel{species, +1})
                                            : g_boltzmann(s, p, ModeLabel{species, +1});
    const double g_minus =
        kind == StatisticsKind::fermi_dirac ? g_fermi_dirac(s, p, ModeLabel{species, -1})
                                            : g_boltzmann(s, p, ModeLabel{species, -1});
    const double coeff = spin_coefficient(g_plus, g_minus, sa, kind);
    return 0.5 * ((g_plus + g_minus) * SpinorMatrix::Identity() + coeff * (gamma5() * slash(a)));
}

SpinMatrix2 spin_density_from_spinors(const MultiplierSet& s, const OnShellMomentum& p,
                                      int species, StatisticsKind kind) {
    const SpinorMatrix x = x_matrix(s, p, species, kind);
    const BispinorSet bs = make_bispinors(p);
    const double pref = 1.0 / (2.0 * p.m);
    SpinMatrix2 f;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            if (species > 0) {
                f(r, c) = pref * (dirac_adjoint(bs.u[static_cast<std::size_t>(r)]) * x *
                                  bs.u[static_cast<std::size_t>(c)])(0);
            } else {
                f(r, c) = -pref * (dirac_adjoint(bs.v[static_cast<std::size_t>(c)]) * x *
                                   bs.v[static_cast<std::size_t>(r)])(0);
            }
        }
    }
    return f;
}

std::array<SpinMatrix2, 6> sigma_matrix_elements(int species, const OnShellMomentum& p) {
    const BispinorSet bs = make_bispinors(p);
    const double pref = 1.0 / (2.0 * p.m);
    std::array<SpinMatrix2, 6> out;
    for (int k = 0; k < 6; ++k) {
        const int mu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][0];
        const int nu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][1];
        const SpinorMatrix sig = sigma_mu_nu(mu, nu);
        SpinMatrix2 block;
        for (int s = 0; s < 2; ++s) {
            for (int r = 0; r < 2; ++r) {
                if (species > 0) {
                    block(s, r) = pref * (dirac_adjoint(bs.u[static_cast<std::size_t>(s)]) * sig *
                                          bs.u[static_cast<std::size_t>(r)])(0);
                } else {
                    block(s, r) = pref * (dirac_adjoint(bs.v[static_cast<std::size_t>(r)]) * sig *
                                          bs.v[static_cast<std::size_t>(s)])(0);
                }
            }
        }
        out[static_cast<std::size_t>(k)] = block;
    }
    return out;
}

TraceCheckReport verify_trace_reductions(const MultiplierSet& s, const OnShellMomentum& p,
                                        StatisticsKind kind) {
    const double m = p.m;
    const FourVector pf = p.four_momentum();
    const SpinorMatrix ps = slash(pf);
    const SpinorMatrix xp = x_matrix(s, p, +1, kind);
    const SpinorMatrix xm = x_matrix(s, p, -1, kind);
    const SpinorMatrix proj_p = ps + m * SpinorMatrix::Identity();
    const SpinorMatrix proj_m = ps - m * SpinorMatrix::Identity();

    auto g = [&](int i, int j) {
        return kind == StatisticsKind::fermi_dirac ? g_fermi_dirac(s, p, ModeLabel{i, j})
                                                   : g_boltzmann(s, p, ModeLabel{i, j});
    };
    const double gpp = g(+1, +1), gpm = g(+1, -1), gmp = g(-1, +1), gmm = g(-1, -1);
    const double sa = a_norm_prf(s.omega, p);
    const FourVector a = spin_four_vector(s.omega, p);

    auto rel = [](C lhs, double rhs) {
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        return std::abs(lhs - C(rhs)) / scale;
    };

    TraceCheckReport rep;
    const C tr_p = (xp * proj_p).trace();
    const C tr_m = (xm * proj_m).trace();
    rep.baryon_residual = rel((tr_p + tr_m) / (2.0 * m), (gpp + gpm) - (gmp + gmm));
    rep.energy_momentum_residual = rel((tr_p - tr_m) / (2.0 * m), (gpp + gpm) + (gmp + gmm));

    // spin line, componentwise over the six (mu < nu) pairs; the reduced side
    // uses the smooth product form and an independent Levi-Civita contraction
    const double coeff_sum = spin_coefficient(gpp, gpm, sa, kind) + spin_coefficient(gmp, gmm, sa, kind);
    for (int k = 0; k < 6; ++k) {
        const int mu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][0];
        const int nu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][1];
        const SpinorMatrix sig = sigma_mu_nu(mu, nu);
        const C lhs = ((sig * xp * proj_p).trace() + (sig * xm * proj_m).trace()) / (4.0 * m);
        double t = 0.0;
        for (int ga = 0; ga < 4; ++ga)
            for (int de = 0; de < 4; ++de)
                t += levi_civita(mu, nu, ga, de) * a.lower(static_cast<std::size_t>(ga)) *
                     pf.lower(static_cast<std::size_t>(de));
        const double rhs = coeff_sum * t / (2.0 * m);
        rep.spin_residual = std::max(rep.spin_residual, rel(lhs, rhs));
    }
    rep.max_residual = std::max({rep.baryon_residual, rep.energy_momentum_residual, rep.spin_residual});
    return rep;
}

} // namespace spinstat::spinor
