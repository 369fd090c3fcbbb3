#include "spinstat/polarization.hpp"

#include <cmath>
#include <stdexcept>

#include "spinstat/kernels/mode_kernel.hpp"

namespace spinstat {

namespace {

double occupation(const MultiplierSet& s, const OnShellMomentum& p, ModeLabel l,
                  StatisticsKind kind) {
    return kind == StatisticsKind::fermi_dirac ? g_fermi_dirac(s, p, l) : g_boltzmann(s, p, l);
}

double spin_coefficient(double g_plus, double g_minus, double sa, StatisticsKind kind) {
    if (sa >= 1e-10) return (g_plus - g_minus) / sa;
    if (kind == StatisticsKind::fermi_dirac) return 2.0 * g_plus * (1.0 - g_plus);
    return 2.0 * g_plus;
}

} // namespace

Eigen::Matrix2cd spin_density_closed(const MultiplierSet& s, const OnShellMomentum& p,
                                     int species, StatisticsKind kind) {
    const double g_plus = occupation(s, p, ModeLabel{species, +1}, kind);
    const double g_minus = occupation(s, p, ModeLabel{species, -1}, kind);
    const double sa = a_norm_prf(s.omega, p);
    const Vec3 as = a_star(s.omega, p);
    const double coeff = spin_coefficient(g_plus, g_minus, sa, kind);

    Eigen::Matrix2cd as_dot_sigma;
    as_dot_sigma << as[2], std::complex<double>(as[0], -as[1]),
        std::complex<double>(as[0], as[1]), -as[2];
    return 0.5 * ((g_plus + g_minus) * Eigen::Matrix2cd::Identity() + coeff * as_dot_sigma);
}

Vec3 mean_polarization(const MultiplierSet& s, const OnShellMomentum& p, StatisticsKind kind) {
    const double sa = a_norm_prf(s.omega, p);
    const Vec3 as = a_star(s.omega, p);
    double num = 0.0, den = 0.0;
    for (int species : {+1, -1}) {
        const double g_plus = occupation(s, p, ModeLabel{species, +1}, kind);
        const double g_minus = occupation(s, p, ModeLabel{species, -1}, kind);
        num += spin_coefficient(g_plus, g_minus, sa, kind);  // (sum_j j g)/sa, smooth at 0
        den += g_plus + g_minus;
    }
    // P = (a*/2|a*|) (sum j g)/(sum g) = a* (sum j g / sa) / (2 sum g)
    return scale3(as, 0.5 * num / den);
}

Vec3 mean_polarization(const FluidState& s, const OnShellMomentum& p, StatisticsKind kind) {
    return mean_polarization(MultiplierSet::from_state(s), p, kind);
}

FluidState vortex_state(const VortexParameters& v, double mass) {
    if (!(v.T0 > 0.0)) throw std::invalid_argument("vortex_state: T0 must be positive");
    const Vec3 e{0.0, 0.0, 0.0};
    const Vec3 b{0.0, 0.0, -v.Omega0 / v.T0};
    return FluidState(mass, v.T0, v.mu0, FourVector{1.0, 0.0, 0.0, 0.0}, eb_compose(e, b));
}

Vec3 averaged_polarization(const FluidState& state, const QuadratureSpec& q, StatisticsKind kind,
                           bool particles_only) {
    const MultiplierSet s = MultiplierSet::from_state(state);
    const EBDecomposition eb = eb_decompose(s.omega);
    const double m = s.m;
    const double xi = s.xi;
    const double beta0 = s.beta[0];
    const Vec3 betav = s.beta.spatial();
    const bool fd = kind == StatisticsKind::fermi_dirac;

    // components: numerator (3) = P(p) sum_ij g, denominator (1) = sum_ij g
    BatchIntegrand f = [=](const NodeBatch& nb, std::span<double> out) {
        const std::size_t n = nb.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double e_p = nb.energy[i];
            const Vec3 p{nb.px[i], nb.py[i], nb.pz[i]};
            const double bp = beta0 * e_p - dot3(betav, p);
            const Vec3 w = sub3(scale3(eb.b, e_p), cross3(p, eb.e));
            const double pb = dot3(p, eb.b);
            const Vec3 bs = scale3(sub3(w, scale3(p, pb / (e_p + m))), 1.0 / m);
            const Vec3 as = scale3(bs, -0.5);
            const double sa = 0.5 * norm3(bs);

            double num = 0.0, den = 0.0;
            for (int species : {+1, -1}) {
                if (particles_only && species < 0) continue;
                const double wp = -species * xi + bp - sa;
                const double wm = -species * xi + bp + sa;
                const double gp = fd ? g_fd_from_w(wp) : std::exp(-wp);
                const double gm = fd ? g_fd_from_w(wm) : std::exp(-wm);
                num += spin_coefficient(gp, gm, sa, kind);
                den += gp + gm;
            }
            out[i * 4 + 0] = 0.5 * num * as[0];
            out[i * 4 + 1] = 0.5 * num * as[1];
            out[i * 4 + 2] = 0.5 * num * as[2];
            out[i * 4 + 3] = den;
        }
    };

    const IntegralResult res = integrate_dP(4, f, s, q);
    const double den = res.value[3];
    if (den <= 0.0) throw std::runtime_error("averaged_polarization: vanishing weight");
    return {res.value[0] / den, res.value[1] / den, res.value[2] / den};
}

} // namespace spinstat
