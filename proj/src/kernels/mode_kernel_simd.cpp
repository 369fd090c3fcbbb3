#include <cmath>

#include "spinstat/kernels/mode_kernel.hpp"
#include "simd_math.hpp"

namespace spinstat::kernels::detail {

namespace {

namespace stdx = std::experimental;
using V = stdx::native_simd<double>;

constexpr double kSpinRatioFloor = 1e-6;  // keep in sync with the scalar kernel

inline V g_fd_v(V w) {
    const V t = simd_math::exp_v(-stdx::abs(w));
    V num = V(1.0);
    stdx::where(w >= V(0.0), num) = t;
    return num / (V(1.0) + t);
}

inline V softplus_v(V x) {
    return stdx::max(x, V(0.0)) + simd_math::softplus_neg_v(-stdx::abs(x));
}

} // namespace

void mode_batch_simd(StatisticsKind kind, double xi, double suppression,
                     const ModeBatchIO& io) {
    const std::size_t n = io.beta_dot_p.size();
    const std::size_t vn = n - n % V::size();
    const bool fd = kind == StatisticsKind::fermi_dirac;

    for (std::size_t idx = 0; idx < vn; idx += V::size()) {
        V bp(&io.beta_dot_p[idx], stdx::element_aligned);
        bp += V(suppression);
        const V sa(&io.sqrt_minus_a2[idx], stdx::element_aligned);

        V w[4] = {V(-xi) + bp - sa, V(-xi) + bp + sa, V(xi) + bp - sa, V(xi) + bp + sa};
        V g[4];
        for (int k = 0; k < 4; ++k) g[k] = fd ? g_fd_v(w[k]) : simd_math::exp_v(-w[k]);

        if (!io.sum_g.empty())
            ((g[0] + g[1]) + (g[2] + g[3])).copy_to(&io.sum_g[idx], stdx::element_aligned);
        if (!io.signed_sum_g.empty())
            ((g[0] + g[1]) - (g[2] + g[3])).copy_to(&io.signed_sum_g[idx], stdx::element_aligned);
        if (!io.spin_sum_over_s.empty()) {
            const V ratio = ((g[0] - g[1]) + (g[2] - g[3])) / sa;
            V out = fd ? V(2.0) * (g[0] * (V(1.0) - g[0]) + g[2] * (V(1.0) - g[2]))
                       : V(2.0) * (g[0] + g[2]);
            stdx::where(sa > V(kSpinRatioFloor), out) = ratio;
            out.copy_to(&io.spin_sum_over_s[idx], stdx::element_aligned);
        }
        if (!io.pressure_term.empty()) {
            const V out = fd ? (softplus_v(-w[0]) + softplus_v(-w[1])) +
                                   (softplus_v(-w[2]) + softplus_v(-w[3]))
                             : (g[0] + g[1]) + (g[2] + g[3]);
            out.copy_to(&io.pressure_term[idx], stdx::element_aligned);
        }
        if (!io.entropy_term.empty()) {
            V out;
            if (fd) {
                out = (g[0] * w[0] + softplus_v(-w[0])) + (g[1] * w[1] + softplus_v(-w[1])) +
                      (g[2] * w[2] + softplus_v(-w[2])) + (g[3] * w[3] + softplus_v(-w[3]));
            } else {
                out = g[0] * (V(1.0) + w[0]) + g[1] * (V(1.0) + w[1]) +
                      g[2] * (V(1.0) + w[2]) + g[3] * (V(1.0) + w[3]);
            }
            out.copy_to(&io.entropy_term[idx], stdx::element_aligned);
        }
        if (!io.chi_term.empty() && !fd)
            (((g[0] + g[1]) + (g[2] + g[3]))).copy_to(&io.chi_term[idx], stdx::element_aligned);
    }

    // The FD chi term needs the dilogarithm; that stays scalar.
    if (!io.chi_term.empty() && fd) {
        for (std::size_t idx = 0; idx < vn; ++idx) {
            const double bp = io.beta_dot_p[idx] + suppression;
            const double sa = io.sqrt_minus_a2[idx];
            const double w[4] = {-xi + bp - sa, -xi + bp + sa, xi + bp - sa, xi + bp + sa};
            io.chi_term[idx] = (chi_mode_from_w(w[0]) + chi_mode_from_w(w[1])) +
                               (chi_mode_from_w(w[2]) + chi_mode_from_w(w[3]));
        }
    }

    if (vn < n) {
        auto tail = [vn](std::span<double> s) {
            return s.empty() ? s : s.subspan(vn);
        };
        ModeBatchIO rest{io.beta_dot_p.subspan(vn), io.sqrt_minus_a2.subspan(vn),
                         tail(io.sum_g),        tail(io.signed_sum_g),
                         tail(io.spin_sum_over_s), tail(io.pressure_term),
                         tail(io.entropy_term), tail(io.chi_term)};
        mode_batch_scalar(kind, xi, suppression, rest);
    }
}

} // namespace spinstat::kernels::detail
