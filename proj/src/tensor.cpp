#include "spinstat/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace spinstat {

int levi_civita(int a, int b, int c, int d) {
    // Sign of the permutation (a,b,c,d) of (0,1,2,3); 0 on repeated indices.
    const int idx[4] = {a, b, c, d};
    int sign = 1;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) sign = -sign;
        }
    }
    return sign;
}

namespace {

// slot_of[mu][nu]: index into the six-component storage, -1 on the diagonal.
constexpr int slot_of[4][4] = {
    {-1, 0, 1, 2},
    {0, -1, 3, 4},
    {1, 3, -1, 5},
    {2, 4, 5, -1},
};

} // namespace

Antisym2Tensor Antisym2Tensor::from_components(const std::array<double, 6>& indep) {
    Antisym2Tensor t;
    for (int k = 0; k < 6; ++k) t.c_[static_cast<std::size_t>(k)] = indep[static_cast<std::size_t>(k)];
    return t;
}

Antisym2Tensor Antisym2Tensor::from_matrix(const std::array<std::array<double, 4>, 4>& a) {
    double scale = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) scale = std::max(scale, std::abs(a[mu][nu]));
    const double tol = 1e-12 * std::max(scale, 1.0);
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = mu; nu < 4; ++nu) {
            if (std::abs(a[mu][nu] + a[nu][mu]) > tol)
                throw std::invalid_argument("Antisym2Tensor::from_matrix: input is not antisymmetric");
        }
    }
    Antisym2Tensor t;
    for (int k = 0; k < 6; ++k) t.c_[static_cast<std::size_t>(k)] = a[pairs[static_cast<std::size_t>(k)][0]][pairs[static_cast<std::size_t>(k)][1]];
    return t;
}

double Antisym2Tensor::upper(int mu, int nu) const {
    if (mu == nu) return 0.0;
    const int k = slot_of[mu][nu];
    const double v = c_[static_cast<std::size_t>(k)];
    return mu < nu ? v : -v;
}

double Antisym2Tensor::max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

Antisym2Tensor eb_compose(const Vec3& e, const Vec3& b) {
    // omega^{0i} = -e_i, omega^{12} = -b_3, omega^{13} = +b_2, omega^{23} = -b_1
    return Antisym2Tensor::from_components({-e[0], -e[1], -e[2], -b[2], b[1], -b[0]});
}

EBDecomposition eb_decompose(const Antisym2Tensor& a) {
    EBDecomposition d;
    d.e = {-a.indep(0), -a.indep(1), -a.indep(2)};
    d.b = {-a.indep(5), a.indep(4), -a.indep(3)};
    return d;
}

Antisym2Tensor dual(const Antisym2Tensor& a) {
    Antisym2Tensor t;
    for (int k = 0; k < 6; ++k) {
        const int mu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][0];
        const int nu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][1];
        double sum = 0.0;
        for (int ga = 0; ga < 4; ++ga) {
            for (int de = 0; de < 4; ++de) {
                const int e = levi_civita(mu, nu, ga, de);
                if (e != 0) sum += 0.5 * e * a.lower(ga, de);
            }
        }
        t.indep(k) = sum;
    }
    return t;
}

OnShellMomentum::OnShellMomentum(const Vec3& three_momentum, double mass)
    : p(three_momentum), m(mass) {
    if (!(mass > 0.0)) throw std::invalid_argument("OnShellMomentum: mass must be positive");
}

FourVector spin_four_vector(const Antisym2Tensor& omega, const OnShellMomentum& p) {
    const Antisym2Tensor dOmega = dual(omega);
    const FourVector pm = p.four_momentum();
    FourVector a;
    const double pref = -1.0 / (2.0 * p.m);
    for (int mu = 0; mu < 4; ++mu) {
        double sum = 0.0;
        for (int nu = 0; nu < 4; ++nu) sum += dOmega.upper(mu, nu) * pm.lower(static_cast<std::size_t>(nu));
        a[static_cast<std::size_t>(mu)] = pref * sum;
    }
    return a;
}

Vec3 b_star(const Antisym2Tensor& omega, const OnShellMomentum& p) {
    const EBDecomposition eb = eb_decompose(omega);
    const double e_p = p.energy();
    const Vec3 term1 = scale3(eb.b, e_p);
    const Vec3 term2 = cross3(p.p, eb.e);
    const Vec3 term3 = scale3(p.p, dot3(p.p, eb.b) / (e_p + p.m));
    return scale3(sub3(sub3(term1, term2), term3), 1.0 / p.m);
}

double a_norm(const Antisym2Tensor& omega, const OnShellMomentum& p) {
    const FourVector a = spin_four_vector(omega, p);
    const double q = -minkowski_dot(a, a);
    double comp2 = 0.0;
    for (int mu = 0; mu < 4; ++mu) comp2 += a[static_cast<std::size_t>(mu)] * a[static_cast<std::size_t>(mu)];
    if (q < -1e-12 * std::max(1.0, comp2))
        throw std::runtime_error("a_norm: spin four-vector came out timelike; inconsistent input");
    return std::sqrt(std::max(q, 0.0));
}

LorentzTransform::LorentzTransform() {
    for (int mu = 0; mu < 4; ++mu) elem(mu, mu) = 1.0;
}

LorentzTransform LorentzTransform::boost(const Vec3& velocity) {
    const double v2 = dot3(velocity, velocity);
    if (!(v2 < 1.0)) throw std::invalid_argument("LorentzTransform::boost: |v| must be < 1");
    LorentzTransform L;
    if (v2 == 0.0) return L;
    const double gamma = 1.0 / std::sqrt(1.0 - v2);
    L.elem(0, 0) = gamma;
    for (int i = 0; i < 3; ++i) {
        L.elem(0, i + 1) = gamma * velocity[static_cast<std::size_t>(i)];
        L.elem(i + 1, 0) = gamma * velocity[static_cast<std::size_t>(i)];
        for (int j = 0; j < 3; ++j) {
            L.elem(i + 1, j + 1) = (i == j ? 1.0 : 0.0) +
                                   (gamma - 1.0) * velocity[static_cast<std::size_t>(i)] *
                                       velocity[static_cast<std::size_t>(j)] / v2;
        }
    }
    return L;
}

FourVector LorentzTransform::apply(const FourVector& x) const {
    FourVector y;
    for (int mu = 0; mu < 4; ++mu) {
        double sum = 0.0;
        for (int nu = 0; nu < 4; ++nu) sum += elem(mu, nu) * x[static_cast<std::size_t>(nu)];
        y[static_cast<std::size_t>(mu)] = sum;
    }
    return y;
}

Antisym2Tensor LorentzTransform::apply(const Antisym2Tensor& a) const {
    Antisym2Tensor t;
    for (int k = 0; k < 6; ++k) {
        const int mu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][0];
        const int nu = Antisym2Tensor::pairs[static_cast<std::size_t>(k)][1];
        double sum = 0.0;
        for (int al = 0; al < 4; ++al)
            for (int be = 0; be < 4; ++be) sum += elem(mu, al) * elem(nu, be) * a.upper(al, be);
        t.indep(k) = sum;
    }
    return t;
}

double LorentzTransform::metric_deviation() const {
    double dev = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            double sum = 0.0;
            for (int al = 0; al < 4; ++al) sum += elem(al, mu) * metric_diag(al) * elem(al, nu);
            const double target = mu == nu ? metric_diag(mu) : 0.0;
            dev = std::max(dev, std::abs(sum - target));
        }
    }
    return dev;
}

LorentzTransform boost_to_prf(const OnShellMomentum& p) {
    const double e_p = p.energy();
    return LorentzTransform::boost(scale3(p.p, -1.0 / e_p));
}

} // namespace spinstat
