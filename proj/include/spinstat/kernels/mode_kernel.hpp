#pragma once

#include <span>
#include <string_view>

#include "spinstat/statistics.hpp"

namespace spinstat::kernels {

// The momentum-quadrature inner loop is a data-parallel sweep over nodes:
// assemble the four mode exponents from (beta.p, sqrt(-a.a), xi) and fold
// them into the per-node sums each current needs. Two implementations exist,
// a scalar reference and a SIMD variant (std::experimental::simd, AVX2 on
// x86-64 / NEON on aarch64), selected at runtime and equivalence-tested.
enum class Backend { scalar, simd };

Backend active_backend();
// Returns false (and leaves the backend unchanged) if the requested backend
// is not available on this machine/build.
bool set_backend(Backend b);
bool simd_available();
const char* backend_name(Backend b);

// SoA batch. Input spans must have equal size n; every output span is either
// empty (skipped) or of size n.
//
//   w^{ij} = -i xi + beta.p - j sqrt(-a.a) + suppression
//
//   sum_g          : sum_ij g
//   signed_sum_g   : sum_ij i g
//   spin_sum_over_s: (sum_ij j g) / s, continued smoothly through s -> 0
//   pressure_term  : FD sum_ij -ln(1-g);      Boltzmann sum_ij g
//   entropy_term   : FD sum_ij [g w - ln(1-g)]; Boltzmann sum_ij g (1 + w)
//   chi_term       : FD sum_ij chi_mode;      Boltzmann sum_ij g
//
// `suppression` shifts every mode exponent by a constant, i.e. multiplies
// both species' fugacities by e^{-suppression}; the Boltzmann-limit check
// drives it.
struct ModeBatchIO {
    std::span<const double> beta_dot_p;
    std::span<const double> sqrt_minus_a2;
    std::span<double> sum_g;
    std::span<double> signed_sum_g;
    std::span<double> spin_sum_over_s;
    std::span<double> pressure_term;
    std::span<double> entropy_term;
    std::span<double> chi_term;
};

void mode_batch(StatisticsKind kind, double xi, double suppression, const ModeBatchIO& io);

namespace detail {
void mode_batch_scalar(StatisticsKind kind, double xi, double suppression, const ModeBatchIO& io);
} // namespace detail

} // namespace spinstat::kernels
