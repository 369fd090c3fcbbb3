#include <cmath>

#include "spinstat/kernels/mode_kernel.hpp"

namespace spinstat::kernels::detail {

// Below this value of s = sqrt(-a.a) the ratio (sum_j j g)/s is evaluated by
// its limit 2 sum_i g_i (1 - g_i) (FD) or 2 sum_i g_i (Boltzmann); the two
// branches agree to ~1e-10 at the crossover.
constexpr double kSpinRatioFloor = 1e-6;

void mode_batch_scalar(StatisticsKind kind, double xi, double suppression,
                       const ModeBatchIO& io) {
    const std::size_t n = io.beta_dot_p.size();
    const bool fd = kind == StatisticsKind::fermi_dirac;

    for (std::size_t idx = 0; idx < n; ++idx) {
        const double bp = io.beta_dot_p[idx] + suppression;
        const double sa = io.sqrt_minus_a2[idx];

        // mode order: (i,j) = (+,+), (+,-), (-,+), (-,-)
        double w[4] = {-xi + bp - sa, -xi + bp + sa, xi + bp - sa, xi + bp + sa};
        double g[4];
        for (int k = 0; k < 4; ++k) g[k] = fd ? g_fd_from_w(w[k]) : std::exp(-w[k]);

        if (!io.sum_g.empty()) io.sum_g[idx] = (g[0] + g[1]) + (g[2] + g[3]);
        if (!io.signed_sum_g.empty()) io.signed_sum_g[idx] = (g[0] + g[1]) - (g[2] + g[3]);
        if (!io.spin_sum_over_s.empty()) {
            if (sa > kSpinRatioFloor) {
                io.spin_sum_over_s[idx] = ((g[0] - g[1]) + (g[2] - g[3])) / sa;
            } else if (fd) {
                io.spin_sum_over_s[idx] = 2.0 * (g[0] * (1.0 - g[0]) + g[2] * (1.0 - g[2]));
            } else {
                io.spin_sum_over_s[idx] = 2.0 * (g[0] + g[2]);
            }
        }
        if (!io.pressure_term.empty()) {
            io.pressure_term[idx] =
                fd ? (softplus(-w[0]) + softplus(-w[1])) + (softplus(-w[2]) + softplus(-w[3]))
                   : (g[0] + g[1]) + (g[2] + g[3]);
        }
        if (!io.entropy_term.empty()) {
            if (fd) {
                io.entropy_term[idx] = (g[0] * w[0] + softplus(-w[0])) + (g[1] * w[1] + softplus(-w[1])) +
                                       (g[2] * w[2] + softplus(-w[2])) + (g[3] * w[3] + softplus(-w[3]));
            } else {
                io.entropy_term[idx] = g[0] * (1.0 + w[0]) + g[1] * (1.0 + w[1]) +
                                       g[2] * (1.0 + w[2]) + g[3] * (1.0 + w[3]);
            }
        }
        if (!io.chi_term.empty()) {
            io.chi_term[idx] = fd ? (chi_mode_from_w(w[0]) + chi_mode_from_w(w[1])) +
                                        (chi_mode_from_w(w[2]) + chi_mode_from_w(w[3]))
                                  : (g[0] + g[1]) + (g[2] + g[3]);
        }
    }
}

} // namespace spinstat::kernels::detail
