#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "spinstat/kernels/mode_kernel.hpp"

namespace spinstat::kernels {

namespace detail {
#if defined(SPINSTAT_SIMD_X86_AVX2) || defined(SPINSTAT_SIMD_NEON)
void mode_batch_simd(StatisticsKind kind, double xi, double suppression, const ModeBatchIO& io);
#endif
} // namespace detail

bool simd_available() {
#if defined(SPINSTAT_SIMD_X86_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#elif defined(SPINSTAT_SIMD_NEON)
    return true;
#else
    return false;
#endif
}

namespace {

Backend default_backend() {
    Backend b = simd_available() ? Backend::simd : Backend::scalar;
    if (const char* env = std::getenv("SPINSTAT_KERNEL")) {
        const std::string s(env);
        if (s == "scalar") b = Backend::scalar;
        // "simd" and "auto" both resolve to the detected default;
        // requesting simd on a machine without it silently stays scalar.
    }
    return b;
}

std::atomic<Backend>& slot() {
    static std::atomic<Backend> b{default_backend()};
    return b;
}

} // namespace

Backend active_backend() { return slot().load(std::memory_order_relaxed); }

bool set_backend(Backend b) {
    if (b == Backend::simd && !simd_available()) return false;
    slot().store(b, std::memory_order_relaxed);
    return true;
}

const char* backend_name(Backend b) { return b == Backend::simd ? "simd" : "scalar"; }

void mode_batch(StatisticsKind kind, double xi, double suppression, const ModeBatchIO& io) {
    const std::size_t n = io.beta_dot_p.size();
    if (io.sqrt_minus_a2.size() != n)
        throw std::invalid_argument("mode_batch: input spans differ in size");
    for (const auto* out : {&io.sum_g, &io.signed_sum_g, &io.spin_sum_over_s,
                            &io.pressure_term, &io.entropy_term, &io.chi_term}) {
        if (!out->empty() && out->size() != n)
            throw std::invalid_argument("mode_batch: output span size mismatch");
    }
#if defined(SPINSTAT_SIMD_X86_AVX2) || defined(SPINSTAT_SIMD_NEON)
    if (active_backend() == Backend::simd) {
        detail::mode_batch_simd(kind, xi, suppression, io);
        return;
    }
#endif
    detail::mode_batch_scalar(kind, xi, suppression, io);
}

} // namespace spinstat::kernels
