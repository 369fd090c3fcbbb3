#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace spinstat {

// Metric convention: g = diag(+1, -1, -1, -1), epsilon^{0123} = +1.
// All stored four-vector/tensor components are contravariant unless noted.

using Vec3 = std::array<double, 3>;

inline double dot3(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross3(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }
inline Vec3 add3(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 sub3(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 scale3(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

inline constexpr double metric_diag(int mu) { return mu == 0 ? 1.0 : -1.0; }

// Levi-Civita symbol with epsilon^{0123} = +1 (so epsilon_{0123} = -1).
int levi_civita(int a, int b, int c, int d);

struct FourVector {
    std::array<double, 4> c{};

    FourVector() = default;
    FourVector(double t, double x, double y, double z) : c{t, x, y, z} {}
    FourVector(double t, const Vec3& v) : c{t, v[0], v[1], v[2]} {}

    double operator[](std::size_t mu) const { return c[mu]; }
    double& operator[](std::size_t mu) { return c[mu]; }
    double lower(std::size_t mu) const { return metric_diag(static_cast<int>(mu)) * c[mu]; }
    double time() const { return c[0]; }
    Vec3 spatial() const { return {c[1], c[2], c[3]}; }
};

inline FourVector operator+(const FourVector& a, const FourVector& b) {
    return {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]};
}
inline FourVector operator-(const FourVector& a, const FourVector& b) {
    return {a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]};
}
inline FourVector operator*(double s, const FourVector& a) {
    return {s * a.c[0], s * a.c[1], s * a.c[2], s * a.c[3]};
}

inline double minkowski_dot(const FourVector& a, const FourVector& b) {
    return a.c[0] * b.c[0] - a.c[1] * b.c[1] - a.c[2] * b.c[2] - a.c[3] * b.c[3];
}

// Antisymmetric rank-2 tensor stored as the six independent contravariant
// components in the order (01, 02, 03, 12, 13, 23). Antisymmetry can not be
// violated by construction; the full matrix is expanded on demand.
class Antisym2Tensor {
public:
    static constexpr std::array<std::array<int, 2>, 6> pairs = {
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

    Antisym2Tensor() = default;
    static Antisym2Tensor from_components(const std::array<double, 6>& indep);
    // Validates antisymmetry of a full matrix (row-major A[mu][nu], contravariant)
    // to 1e-12 relative on the symmetric part; throws std::invalid_argument.
    static Antisym2Tensor from_matrix(const std::array<std::array<double, 4>, 4>& a);

    double upper(int mu, int nu) const;
    double lower(int mu, int nu) const {
        return metric_diag(mu) * metric_diag(nu) * upper(mu, nu);
    }
    double indep(int k) const { return c_[static_cast<std::size_t>(k)]; }
    double& indep(int k) { return c_[static_cast<std::size_t>(k)]; }
    double max_abs() const;

private:
    std::array<double, 6> c_{};
};

inline Antisym2Tensor operator+(const Antisym2Tensor& a, const Antisym2Tensor& b) {
    Antisym2Tensor r;
    for (int k = 0; k < 6; ++k) r.indep(k) = a.indep(k) + b.indep(k);
    return r;
}
inline Antisym2Tensor operator*(double s, const Antisym2Tensor& a) {
    Antisym2Tensor r;
    for (int k = 0; k < 6; ++k) r.indep(k) = s * a.indep(k);
    return r;
}

struct EBDecomposition {
    Vec3 e{};
    Vec3 b{};
};

// omega^{i0} = e^i, omega^{ij} = -eps^{ijk} b_k (Faraday-tensor layout).
Antisym2Tensor eb_compose(const Vec3& e, const Vec3& b);
EBDecomposition eb_decompose(const Antisym2Tensor& a);

// Dual: Atilde^{ab} = (1/2) eps^{abcd} A_{cd}. In (e,b) language this maps
// (e, b) -> (b, -e); the double dual is -identity.
Antisym2Tensor dual(const Antisym2Tensor& a);

// On-shell momentum: the energy is always recomputed from (p, m), never stored.
struct OnShellMomentum {
    Vec3 p{};
    double m = 0.0;

    OnShellMomentum(const Vec3& three_momentum, double mass);
    double energy() const { return std::sqrt(m * m + dot3(p, p)); }
    FourVector four_momentum() const { return {energy(), p}; }
};

// Spin four-vector a^mu = -(1/2m) dual(omega)^{mu nu} p_nu (contravariant
// components). Orthogonal to p and spacelike for real omega.
FourVector spin_four_vector(const Antisym2Tensor& omega, const OnShellMomentum& p);

// Magnetic-like component of omega seen from the particle rest frame:
// b* = (1/m) (E_p b - p x e - (p.b)/(E_p + m) p).
Vec3 b_star(const Antisym2Tensor& omega, const OnShellMomentum& p);

// PRF spatial part of the spin four-vector, a* = -b*/2. |a*| = sqrt(-a.a).
inline Vec3 a_star(const Antisym2Tensor& omega, const OnShellMomentum& p) {
    return scale3(b_star(omega, p), -0.5);
}

// sqrt(-a.a) computed from the four-vector itself, with an invariant check:
// a real omega and on-shell p can never make a timelike. Throws
// std::runtime_error if -a.a < -1e-12 relative to the component magnitude.
double a_norm(const Antisym2Tensor& omega, const OnShellMomentum& p);

// Numerically stable route to sqrt(-a.a) through the rest-frame closed form;
// equal to a_norm to roundoff but free of the large-|p| cancellation.
inline double a_norm_prf(const Antisym2Tensor& omega, const OnShellMomentum& p) {
    return 0.5 * norm3(b_star(omega, p));
}

class LorentzTransform {
public:
    LorentzTransform();  // identity
    static LorentzTransform identity() { return LorentzTransform(); }
    // Boost with velocity v (|v| < 1): maps the rest vector (1,0) to gamma(1,v).
    static LorentzTransform boost(const Vec3& velocity);

    FourVector apply(const FourVector& x) const;
    Antisym2Tensor apply(const Antisym2Tensor& a) const;
    double elem(int mu, int nu) const { return m_[static_cast<std::size_t>(mu * 4 + nu)]; }
    double& elem(int mu, int nu) { return m_[static_cast<std::size_t>(mu * 4 + nu)]; }
    // max |Lambda^T g Lambda - g| entry; zero for an exact Lorentz transform.
    double metric_deviation() const;

private:
    std::array<double, 16> m_{};
};

// Canonical (rotation-free) boost taking p to (m, 0, 0, 0).
LorentzTransform boost_to_prf(const OnShellMomentum& p);

} // namespace spinstat
