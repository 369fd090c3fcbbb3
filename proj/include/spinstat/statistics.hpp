#pragma once

#include <array>

#include "spinstat/tensor.hpp"

namespace spinstat {

enum class StatisticsKind { fermi_dirac, boltzmann };

// Physical fields at one spacetime point. The Lagrange multipliers xi = mu/T
// and beta = u/T are always derived at access time so they cannot drift from
// the fields.
struct FluidState {
    FluidState(double mass, double temperature, double chemical_potential,
               const FourVector& four_velocity, const Antisym2Tensor& spin_tensor);

    double m;
    double T;
    double mu;
    FourVector u;
    Antisym2Tensor omega;

    double xi() const { return mu / T; }
    FourVector beta() const { return (1.0 / T) * u; }
};

// gamma(1, v) for |v| < 1.
FourVector four_velocity(const Vec3& v);

// Unconstrained Lagrange multipliers (m, xi, beta, omega). beta need not be
// normalized; it must be timelike and future-directed for the momentum
// integrals to exist. This is the parametrization the thermodynamic
// derivatives act on.
struct MultiplierSet {
    double m = 1.0;
    double xi = 0.0;
    FourVector beta{1.0, 0.0, 0.0, 0.0};
    Antisym2Tensor omega;

    static MultiplierSet from_state(const FluidState& s);
    double temperature() const;  // 1/sqrt(beta.beta)
};

// species = +1 (particle) / -1 (antiparticle);
// spin = +1 (aligned with a* in the PRF) / -1 (anti-aligned).
struct ModeLabel {
    int species;
    int spin;
};

inline constexpr std::array<ModeLabel, 4> all_mode_labels() {
    return {{{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}};
}
inline constexpr int mode_index(ModeLabel l) {
    return (l.species > 0 ? 0 : 2) + (l.spin > 0 ? 0 : 1);
}

// The four occupation numbers, indexed by mode_index.
struct ModeDistribution {
    std::array<double, 4> g{};
    double operator()(ModeLabel l) const { return g[static_cast<std::size_t>(mode_index(l))]; }
};

// Mode exponent w = -i_species * xi + beta.p - j_spin * sqrt(-a.a).
// Both distributions derive from it: g_B = e^{-w}, g_FD = 1/(e^w + 1).
double mode_exponent(const MultiplierSet& s, const OnShellMomentum& p, ModeLabel label);
double mode_exponent(const FluidState& s, const OnShellMomentum& p, ModeLabel label);

double g_boltzmann(const MultiplierSet& s, const OnShellMomentum& p, ModeLabel label);
double g_boltzmann(const FluidState& s, const OnShellMomentum& p, ModeLabel label);
double g_fermi_dirac(const MultiplierSet& s, const OnShellMomentum& p, ModeLabel label);
double g_fermi_dirac(const FluidState& s, const OnShellMomentum& p, ModeLabel label);

ModeDistribution mode_distribution(const MultiplierSet& s, const OnShellMomentum& p,
                                   StatisticsKind kind);

// Per-mode entropy -[g ln g + (1-g) ln(1-g)], g in (0,1).
double entropy_mode(double g);

// Per-mode generating-function integrand
//   (1/2) ln^2((1-g)/g) + Li2((g-1)/g) + pi^2/6,
// evaluated in this literal form except near g -> 0, where the three terms
// cancel catastrophically and the equivalent single-dilogarithm form
// -Li2(-g/(1-g)) is used instead. Nonnegative and increasing in g.
double chi_mode(double g);

// --- stable w-parametrized forms used by the momentum integrands ---

// ln(1 + e^x) without overflow.
double softplus(double x);
double g_fd_from_w(double w);
// g w - ln(1-g) with g = g_FD(w); algebraically equal to entropy_mode(g).
double entropy_mode_from_w(double w);
// chi_mode(g_FD(w)) through the single-dilogarithm form, stable for all w.
double chi_mode_from_w(double w);

} // namespace spinstat
