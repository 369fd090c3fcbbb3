#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinstat/currents.hpp"
#include "spinstat/quadrature.hpp"
#include "spinstat/statistics.hpp"

namespace spinstat {

// Finite-difference verification of the thermodynamic identities. All
// perturbed evaluations run on one frozen momentum grid built from the base
// state, so the quadrature bias is smooth in the multipliers and differences
// see clean O(h^2) truncation.
struct PerturbationSpec {
    double h_xi = 1e-4;
    double h_beta = -1.0;    // absolute step in beta; < 0 means 1e-4 / T
    double h_omega = 1e-4;
    double h_second = 1e-3;  // step scale for second-derivative stencils
    enum class Scheme { central, richardson };
    Scheme scheme = Scheme::central;
    // Step multiplier for the convergence-order probe: the order is measured
    // where truncation dominates the (tiny, h-independent) quadrature bias.
    double order_probe_scale = 100.0;
};

struct IdentityReport {
    std::string identity;
    struct Entry {
        std::string direction;
        double residual;  // max over components, divided by the identity scale
    };
    std::vector<Entry> entries;
    double max_rel_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::optional<double> convergence_order;  // measured where applicable
};

// d Ncal = N dxi - T^{. lam} dbeta_lam + (1/2) S^{., ab} domega_ab,
// checked by central differences along xi, the four beta_lam and the six
// independent omega_ab directions.
IdentityReport check_gibbs_duhem(const FluidState& s, const QuadratureSpec& q,
                                 const PerturbationSpec& pert, double tol = 1e-5);

// d S^mu = -xi dN^mu + beta_lam dT^{lam mu} - (1/2) omega_ab dS^{mu, ab}
IdentityReport check_first_law(const FluidState& s, const QuadratureSpec& q,
                               const PerturbationSpec& pert, double tol = 1e-5);

// S^mu = -xi N^mu + beta_lam T^{lam mu} - (1/2) omega_ab S^{mu, ab} + Ncal^mu,
// exact at the base state (no differencing); tolerance 3 x quadrature rel_tol.
IdentityReport check_euler(const FluidState& s, const QuadratureSpec& q,
                           double tol_multiple = 3.0);

// Ncal^lam = -dchi/dbeta_lam, N^lam = -d2chi/dxi dbeta_lam,
// T^{lam mu} = d2chi/dbeta_lam dbeta_mu, S^{lam,mn} = -d2chi/dbeta_lam domega_mn
IdentityReport check_generating_function(const FluidState& s, const QuadratureSpec& q,
                                         const PerturbationSpec& pert, double tol_first = 1e-5,
                                         double tol_second = 1e-4);

// Relative FD-vs-Boltzmann gap of every current under fugacity suppression
// Delta in {4, 6, 8} (both species' fugacities scaled by e^{-Delta}): gaps
// shrink like e^{-Delta}, consecutive ratios within `rate_window` of e^2.
IdentityReport check_boltzmann_limit(const FluidState& s, const QuadratureSpec& q,
                                     double rate_window = 0.2);

// Exact per-mode Euler identity (no quadrature): the entropy integrand equals
// -i xi g + (beta.p) g - (1/2) omega_ab s^{ab}_mode + [-ln(1-g)], where
// s^{ab}_mode is the per-mode spin-tensor integrand routed through the full
// Levi-Civita contraction. Returns the residual relative to the term scale.
double per_mode_euler_residual(const MultiplierSet& s, const OnShellMomentum& p, ModeLabel label,
                               StatisticsKind kind = StatisticsKind::fermi_dirac);

// Base-state currents plus the frozen grid they were computed on; reused by
// the CLI so one `verify` run shares a single grid across checks.
class FrozenCurrents {
public:
    FrozenCurrents(const MultiplierSet& base, const QuadratureSpec& q);
    CurrentsOnGrid eval(const MultiplierSet& s, StatisticsKind stats = StatisticsKind::fermi_dirac,
                        double suppression = 0.0) const;
    double eval_chi(const MultiplierSet& s, StatisticsKind stats = StatisticsKind::fermi_dirac,
                    double suppression = 0.0) const;
    const MomentumGrid& grid() const { return grid_; }

private:
    void gate(const MultiplierSet& s) const;
    MomentumGrid grid_;
    double margin_;
};

} // namespace spinstat
