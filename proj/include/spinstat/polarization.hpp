#pragma once

#include <Eigen/Dense>

#include "spinstat/quadrature.hpp"
#include "spinstat/statistics.hpp"
#include "spinstat/tensor.hpp"

namespace spinstat {

// Closed-form 2x2 spin density matrix
//   f^pm = 1/2 [ (g^{pm+} + g^{pm-}) 1 + (a*.sigma)/|a*| (g^{pm+} - g^{pm-}) ],
// Hermitian with eigenvalues {g^{pm+}, g^{pm-}}. The a* -> 0 direction is
// continued smoothly through the product form, as in the spinor route.
Eigen::Matrix2cd spin_density_closed(const MultiplierSet& s, const OnShellMomentum& p,
                                     int species,
                                     StatisticsKind kind = StatisticsKind::fermi_dirac);

// Mean spin polarization of the (particle + antiparticle) mixture at fixed p:
//   P = (a*/2|a*|) (sum_ij j g^{ij}) / (sum_ij g^{ij}),  |P| <= 1/2.
// In the Boltzmann branch |P| = (1/2) tanh(sqrt(-a.a)) independently of xi.
Vec3 mean_polarization(const MultiplierSet& s, const OnShellMomentum& p,
                       StatisticsKind kind = StatisticsKind::fermi_dirac);
Vec3 mean_polarization(const FluidState& s, const OnShellMomentum& p,
                       StatisticsKind kind = StatisticsKind::fermi_dirac);

// Rigidly rotating fluid in global equilibrium, sampled on the rotation axis:
// u at rest, T = T0, mu = mu0, e = 0, b = -(Omega0/T0) z_hat.
struct VortexParameters {
    double T0;
    double Omega0;
    double mu0;
};
FluidState vortex_state(const VortexParameters& v, double mass);

// Momentum average of P weighted by sum_ij g^{ij} (optionally particles
// only). For the vortex state the result is parallel to z with the sign of
// Omega0. Quadrature failures propagate (InadmissibleState / NotConverged).
Vec3 averaged_polarization(const FluidState& s, const QuadratureSpec& q,
                           StatisticsKind kind = StatisticsKind::fermi_dirac,
                           bool particles_only = false);

} // namespace spinstat
