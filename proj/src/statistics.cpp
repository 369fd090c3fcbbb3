#include "spinstat/statistics.hpp"

#include <cmath>
#include <stdexcept>

#include "spinstat/special.hpp"

namespace spinstat {

namespace {

constexpr double kPi2Over6 = 1.6449340668482264365;

void require_same_mass(double state_m, double momentum_m) {
    if (std::abs(state_m - momentum_m) > 1e-12 * std::max(state_m, momentum_m))
        throw std::invalid_argument("state and momentum carry different masses");
}

} // namespace

FluidState::FluidState(double mass, double temperature, double chemical_potential,
                       const FourVector& four_velocity, const Antisym2Tensor& spin_tensor)
    : m(mass), T(temperature), mu(chemical_potential), u(four_velocity), omega(spin_tensor) {
    if (!(m > 0.0)) throw std::invalid_argument("FluidState: mass must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("FluidState: temperature must be positive");
    const double uu = minkowski_dot(u, u);
    if (std::abs(uu - 1.0) > 1e-12)
        throw std::invalid_argument("FluidState: four-velocity must satisfy u.u = 1");
    if (!(u[0] > 0.0)) throw std::invalid_argument("FluidState: four-velocity must be future-directed");
}

FourVector four_velocity(const Vec3& v) {
    const double v2 = dot3(v, v);
    if (!(v2 < 1.0)) throw std::invalid_argument("four_velocity: |v| must be < 1");
    const double gamma = 1.0 / std::sqrt(1.0 - v2);
    return {gamma, scale3(v, gamma)};
}

MultiplierSet MultiplierSet::from_state(const FluidState& s) {
    MultiplierSet ms;
    ms.m = s.m;
    ms.xi = s.xi();
    ms.beta = s.beta();
    ms.omega = s.omega;
    return ms;
}

double MultiplierSet::temperature() const {
    const double bb = minkowski_dot(beta, beta);
    if (!(bb > 0.0)) throw std::runtime_error("MultiplierSet: beta is not timelike");
    return 1.0 / std::sqrt(bb);
}

double mode_exponent(const MultiplierSet& s, const OnShellMomentum& p, ModeLabel label) {
    require_same_mass(s.m, p.m);
    const double bp = minkowski_dot(s.beta, p.four_momentum());
    const double sa = a_norm_prf(s.omega, p);
    return -label.species * s.xi + bp - label.spin * sa;
}

double mode_exponent(const FluidState& s, const OnShellMomentum& p, ModeLabel label) {
    return mode_exponent(MultiplierSet::from_state(s), p, label);
}

double g_boltzmann(const MultiplierSet& s, const OnShellMomentum& p, ModeLabel label) {
    const double w = mode_exponent(s, p, label);
    if (-w > 700.0)
        throw std::overflow_error("g_boltzmann: mode exponent outside validity range");
    return std::exp(-w);
}

double g_boltzmann(const FluidState& s, const OnShellMomentum& p, ModeLabel label) {
    return g_boltzmann(MultiplierSet::from_state(s), p, label);
}

double g_fermi_dirac(const MultiplierSet& s, const OnShellMomentum& p, ModeLabel label) {
    return g_fd_from_w(mode_exponent(s, p, label));
}

double g_fermi_dirac(const FluidState& s, const OnShellMomentum& p, ModeLabel label) {
    return g_fd_from_w(mode_exponent(s, p, label));
}

ModeDistribution mode_distribution(const MultiplierSet& s, const OnShellMomentum& p,
                                   StatisticsKind kind) {
    ModeDistribution d;
    for (ModeLabel l : all_mode_labels()) {
        d.g[static_cast<std::size_t>(mode_index(l))] =
            kind == StatisticsKind::fermi_dirac ? g_fermi_dirac(s, p, l) : g_boltzmann(s, p, l);
    }
    return d;
}

double entropy_mode(double g) {
    if (!(g > 0.0 && g < 1.0)) throw std::domain_error("entropy_mode: g must lie in (0,1)");
    return -g * std::log(g) - (1.0 - g) * std::log1p(-g);
}

double chi_mode(double g) {
    if (!(g > 0.0 && g < 1.0)) throw std::domain_error("chi_mode: g must lie in (0,1)");
    if (g < 1e-8) {
        // The literal form cancels catastrophically here; -Li2(-g/(1-g)) is
        // the same function and is computed directly by the series branch.
        return -dilog(-g / (1.0 - g));
    }
    const double w = std::log1p(-g) - std::log(g);  // ln((1-g)/g)
    return 0.5 * w * w + dilog((g - 1.0) / g) + kPi2Over6;
}

double softplus(double x) {
    if (x > 36.0) return x + std::exp(-x);
    if (x < -36.0) return std::exp(x);
    return std::log1p(std::exp(-std::abs(x))) + std::max(x, 0.0);
}

double g_fd_from_w(double w) {
    if (w >= 0.0) {
        const double t = std::exp(-w);
        return t / (1.0 + t);
    }
    return 1.0 / (1.0 + std::exp(w));
}

double entropy_mode_from_w(double w) {
    return g_fd_from_w(w) * w + softplus(-w);
}

double chi_mode_from_w(double w) {
    // chi_mode(g_FD(w)) = -Li2(-e^{-w}); below w ~ -18 the inverted form
    // pi^2/6 + w^2/2 + Li2(-e^{w}) avoids exponent overflow.
    if (w < -18.0) return kPi2Over6 + 0.5 * w * w + dilog(-std::exp(w));
    return -dilog(-std::exp(-w));
}

} // namespace spinstat
