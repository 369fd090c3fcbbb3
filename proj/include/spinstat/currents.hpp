#pragma once

#include <array>
#include <vector>

#include "spinstat/quadrature.hpp"
#include "spinstat/statistics.hpp"
#include "spinstat/tensor.hpp"

namespace spinstat {

struct SymTensor4 {
    std::array<double, 16> c{};
    double operator()(int mu, int nu) const { return c[static_cast<std::size_t>(mu * 4 + nu)]; }
    double& at(int mu, int nu) { return c[static_cast<std::size_t>(mu * 4 + nu)]; }
    double max_abs() const;
};

// S^{lambda, mu nu}, antisymmetric in (mu, nu); stored as 4 x 6 independent
// components with the pair order of Antisym2Tensor.
struct SpinTensor3 {
    std::array<double, 24> c{};
    double indep(int lam, int k) const { return c[static_cast<std::size_t>(lam * 6 + k)]; }
    double& indep(int lam, int k) { return c[static_cast<std::size_t>(lam * 6 + k)]; }
    double operator()(int lam, int mu, int nu) const;
    double max_abs() const;
};

enum class CurrentKind { baryon, energy_momentum, spin, aux, entropy, generating };

// Number of integrand components per current (4, 10, 24, 4, 4, 1).
int current_component_count(CurrentKind kind);

// Integrand for one current over a node batch; `suppression` multiplies both
// species' fugacities by e^{-suppression} (see kernels::mode_batch).
BatchIntegrand make_current_integrand(CurrentKind kind, const MultiplierSet& s,
                                      StatisticsKind stats, double suppression = 0.0);

IntegralResult evaluate_current(CurrentKind kind, const MultiplierSet& s,
                                const QuadratureSpec& q, StatisticsKind stats,
                                double suppression = 0.0);

struct CurrentsBundle {
    FourVector N;
    SymTensor4 T;
    SpinTensor3 S;
    FourVector Ncal;
    FourVector S_entropy;
    double chi = 0.0;
    double zeta = 0.0;
    // per-component absolute error estimates, same component order as storage
    std::vector<double> N_err, T_err, S_err, Ncal_err, S_entropy_err;
    double chi_err = 0.0;
    int max_refinements_used = 0;
};

// All currents evaluated on one frozen grid (no refinement, no gating);
// the finite-difference identity checks live on this path.
struct CurrentsOnGrid {
    FourVector N;
    SymTensor4 T;
    SpinTensor3 S;
    FourVector Ncal;
    FourVector S_entropy;
    double chi = 0.0;
};
CurrentsOnGrid evaluate_all_on_grid(const MultiplierSet& s, const MomentumGrid& grid,
                                    StatisticsKind stats, double suppression = 0.0);
double evaluate_generating_on_grid(const MultiplierSet& s, const MomentumGrid& grid,
                                   StatisticsKind stats, double suppression = 0.0);

// N^mu = sum_ij i int dP p^mu g^{ij}
FourVector baryon_current(const MultiplierSet& s, const QuadratureSpec& q,
                          StatisticsKind stats = StatisticsKind::fermi_dirac);
// T^{mu nu} = sum_ij int dP p^mu p^nu g^{ij}
SymTensor4 energy_momentum(const MultiplierSet& s, const QuadratureSpec& q,
                           StatisticsKind stats = StatisticsKind::fermi_dirac);
// S^{lambda, mu nu} = (1/2m) sum_ij j int dP p^lambda g^{ij} eps^{mu nu}_{ab} a^a p^b / sqrt(-a.a)
SpinTensor3 spin_tensor(const MultiplierSet& s, const QuadratureSpec& q,
                        StatisticsKind stats = StatisticsKind::fermi_dirac);
// Ncal^mu = -sum_ij int dP p^mu ln(1 - g^{ij})   (Boltzmann: sum_ij int dP p^mu g)
FourVector aux_current(const MultiplierSet& s, const QuadratureSpec& q,
                       StatisticsKind stats = StatisticsKind::fermi_dirac);
// S^mu = -sum_ij int dP p^mu [g ln g + (1-g) ln(1-g)]
FourVector entropy_current(const MultiplierSet& s, const QuadratureSpec& q,
                           StatisticsKind stats = StatisticsKind::fermi_dirac);
// chi = sum_ij int dP [ (1/2) ln^2((1-g)/g) + Li2((g-1)/g) + pi^2/6 ]
double generating_function(const MultiplierSet& s, const QuadratureSpec& q,
                           StatisticsKind stats = StatisticsKind::fermi_dirac);

CurrentsBundle compute_bundle(const MultiplierSet& s, const QuadratureSpec& q,
                              StatisticsKind stats = StatisticsKind::fermi_dirac);
CurrentsBundle compute_bundle(const FluidState& s, const QuadratureSpec& q,
                              StatisticsKind stats = StatisticsKind::fermi_dirac);

} // namespace spinstat
