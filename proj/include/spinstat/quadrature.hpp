#pragma once

#include <functional>
#include <span>
#include <vector>

#include "spinstat/statistics.hpp"
#include "spinstat/tensor.hpp"

namespace spinstat {

struct QuadratureSpec {
    int n_radial = 64;        // total radial Gauss-Legendre nodes on [0, p_max]
    int n_theta = 32;         // Gauss-Legendre nodes in cos(theta)
    int n_phi = 32;           // Gauss-Legendre nodes in phi
    double p_max_mult = 40.0; // cutoff as a multiple of the thermal scale
    double rel_tol = 1e-8;
    int max_refinements = 8;
    double admissibility_margin = 0.05;  // delta in the gate zeta < 1 - delta

    void validate() const;  // throws std::invalid_argument
};

struct IntegralResult {
    std::vector<double> value;
    std::vector<double> error_estimate;  // per component, incl. analytic tail bound
    int refinements_used = 0;
    bool converged = false;
    double max_error() const;
};

// One batch of momentum nodes handed to an integrand (SoA layout).
struct NodeBatch {
    std::span<const double> px, py, pz, energy;
    std::size_t size() const { return px.size(); }
};

// Writes ncomp values per node into out (node-major: out[i*ncomp + j]).
using BatchIntegrand = std::function<void(const NodeBatch&, std::span<double>)>;

// Convergence selection criterion: zeta = max over momentum directions of the
// large-|p| ratio sqrt(-a.a)/(beta.p). The spin term grows linearly in |p|,
// exactly as beta.p does, so the mode exponent decays in every direction iff
// zeta < 1. The limit slope is obtained by direct large-|p| extrapolation
// (Richardson over R and 2R) on a discretized unit sphere (32 x 64 grid).
// Homogeneous of degree one in omega; zero when omega vanishes.
double selection_criterion(const MultiplierSet& s);
double selection_criterion(const FluidState& s);

// Worker threads used inside integrations. Defaults to 1 and is capped by the
// SPINSTAT_THREADS environment variable; results are bit-identical for any
// worker count (fixed-order compensated reduction over fixed slices).
int worker_count();
void set_worker_count(int n);

// Frozen tensor-product node set: Gauss-Legendre panels in |p| on [0, p_max]
// times Gauss-Legendre in cos(theta) and phi. Used directly by the
// finite-difference engine so that perturbed states see the exact same nodes.
class MomentumGrid {
public:
    MomentumGrid(const MultiplierSet& scale_source, const QuadratureSpec& spec,
                 int n_radial_override = -1);

    // Plain integral over the frozen grid; no refinement, no gating.
    // Returns per-component values and the L1 magnitudes sum_i w_i |f_i|.
    void integrate(int ncomp, const BatchIntegrand& f, std::span<double> value,
                   std::span<double> l1_magnitude) const;

    double p_max() const { return p_max_; }
    int n_radial() const { return total_radial_; }
    double min_beta_dot_n() const { return min_beta_dot_n_; }

private:
    std::vector<double> r_, wr_;      // radial nodes/weights (panel-mapped)
    std::vector<double> ct_, wct_;    // cos(theta)
    std::vector<double> phi_, wphi_;
    double p_max_ = 0.0;
    double mass_ = 0.0;
    int total_radial_ = 0;
    double min_beta_dot_n_ = 0.0;  // slowest beta.(1, nhat) over the sphere
};

// Integral of f over dP = d^3p / ((2pi)^3 E_p). Gates on the selection
// criterion (InadmissibleState), then refines by doubling n_radial until the
// inter-level change meets rel_tol (NotConverged when max_refinements is
// exhausted). Deterministic for fixed spec regardless of worker count.
IntegralResult integrate_dP(int ncomp, const BatchIntegrand& f, const MultiplierSet& s,
                            const QuadratureSpec& q);
IntegralResult integrate_dP(int ncomp, const BatchIntegrand& f, const FluidState& s,
                            const QuadratureSpec& q);

// Independent 1D oracle for isotropic integrands:
//   (1/(2 pi^2)) int_0^inf dp p^2/E_p f(p, E_p),
// evaluated with an adaptive double-exponential rule (Boost.Math), entirely
// separate from the 3D engine it validates. Throws NotConverged.
double integrate_dP_radial_oracle(const std::function<double(double, double)>& f_radial,
                                  const MultiplierSet& s, const QuadratureSpec& q);

// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

} // namespace spinstat
