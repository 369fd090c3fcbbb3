#pragma once

// Vector exp and log1p built on std::experimental::simd. Accuracy is a few
// ulp, verified against the scalar libm in the kernel equivalence tests.
// This header is only included by the SIMD kernel translation unit.

#include <experimental/simd>

namespace spinstat::kernels::simd_math {

namespace stdx = std::experimental;

template <class V>
using int_index_t = stdx::fixed_size_simd<int, V::size()>;

// exp(x) for |x| <= ~745; saturates to 0 / grows to inf outside as usual.
template <class V>
inline V exp_v(V x) {
    const V log2e(1.44269504088896340736);
    const V ln2_hi(6.93147180369123816490e-01);
    const V ln2_lo(1.90821492927058770002e-10);

    const V n = stdx::round(x * log2e);
    V r = x - n * ln2_hi;
    r = r - n * ln2_lo;

    // Taylor series of degree 13 on |r| <= ln(2)/2.
    V p(1.0 / 6227020800.0);
    p = p * r + V(1.0 / 479001600.0);
    p = p * r + V(1.0 / 39916800.0);
    p = p * r + V(1.0 / 3628800.0);
    p = p * r + V(1.0 / 362880.0);
    p = p * r + V(1.0 / 40320.0);
    p = p * r + V(1.0 / 5040.0);
    p = p * r + V(1.0 / 720.0);
    p = p * r + V(1.0 / 120.0);
    p = p * r + V(1.0 / 24.0);
    p = p * r + V(1.0 / 6.0);
    p = p * r + V(0.5);
    p = p * r + V(1.0);
    p = p * r + V(1.0);

    const auto ni = stdx::static_simd_cast<int_index_t<V>>(n);
    return stdx::ldexp(p, ni);
}

// log1p(y) for y in [0, 1], via the atanh series in z = y/(2+y), z^2 <= 1/9.
template <class V>
inline V log1p_v(V y) {
    const V z = y / (V(2.0) + y);
    const V z2 = z * z;
    V p(1.0 / 35.0);
    p = p * z2 + V(1.0 / 33.0);
    p = p * z2 + V(1.0 / 31.0);
    p = p * z2 + V(1.0 / 29.0);
    p = p * z2 + V(1.0 / 27.0);
    p = p * z2 + V(1.0 / 25.0);
    p = p * z2 + V(1.0 / 23.0);
    p = p * z2 + V(1.0 / 21.0);
    p = p * z2 + V(1.0 / 19.0);
    p = p * z2 + V(1.0 / 17.0);
    p = p * z2 + V(1.0 / 15.0);
    p = p * z2 + V(1.0 / 13.0);
    p = p * z2 + V(1.0 / 11.0);
    p = p * z2 + V(1.0 / 9.0);
    p = p * z2 + V(1.0 / 7.0);
    p = p * z2 + V(1.0 / 5.0);
    p = p * z2 + V(1.0 / 3.0);
    const V two_z = V(2.0) * z;
    return two_z + two_z * z2 * p;
}

// ln(1 + e^x) for x <= 0 (callers pass -|x|).
template <class V>
inline V softplus_neg_v(V x) {
    return log1p_v(exp_v(x));
}

} // namespace spinstat::kernels::simd_math
