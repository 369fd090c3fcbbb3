#include "spinstat/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "spinstat/errors.hpp"

namespace spinstat {

namespace {

constexpr double kTwoPiCubed = 248.05021344239856;  // (2 pi)^3

// Neumaier compensated accumulator; the fixed-order reductions rely on it.
struct NeumaierAcc {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double result() const { return s + c; }
};

int initial_worker_count() {
    if (const char* env = std::getenv("SPINSTAT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

std::atomic<int>& worker_slot() {
    static std::atomic<int> n{initial_worker_count()};
    return n;
}

} // namespace

int worker_count() { return worker_slot().load(std::memory_order_relaxed); }

void set_worker_count(int n) {
    if (n < 1) throw std::invalid_argument("set_worker_count: need at least one worker");
    worker_slot().store(n, std::memory_order_relaxed);
}

void QuadratureSpec::validate() const {
    if (n_radial < 8) throw std::invalid_argument("QuadratureSpec: n_radial must be >= 8");
    if (n_theta < 4) throw std::invalid_argument("QuadratureSpec: n_theta must be >= 4");
    if (n_phi < 4) throw std::invalid_argument("QuadratureSpec: n_phi must be >= 4");
    if (!(p_max_mult >= 5.0)) throw std::invalid_argument("QuadratureSpec: p_max_mult must be >= 5");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: rel_tol must be positive");
    if (max_refinements < 1) throw std::invalid_argument("QuadratureSpec: max_refinements must be >= 1");
    if (!(admissibility_margin > 0.0 && admissibility_margin < 1.0))
        throw std::invalid_argument("QuadratureSpec: admissibility_margin must lie in (0,1)");
}

double IntegralResult::max_error() const {
    double m = 0.0;
    for (double e : error_estimate) m = std::max(m, e);
    return m;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    x.assign(static_cast<std::size_t>(n), 0.0);
    w.assign(static_cast<std::size_t>(n), 0.0);
    if (n == 1) {
        x[0] = 0.0;
        w[0] = 2.0;
        return;
    }
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = xi;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            const double dx = p1 / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // final values of P_n and P_n' at the converged root
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        const double weight = 2.0 / ((1.0 - xi * xi) * dp * dp);
        x[static_cast<std::size_t>(n - 1 - i)] = xi;
        x[static_cast<std::size_t>(i)] = -xi;
        w[static_cast<std::size_t>(n - 1 - i)] = weight;
        w[static_cast<std::size_t>(i)] = weight;
    }
}

double selection_criterion(const MultiplierSet& s) {
    const double b0 = s.beta[0];
    const Vec3 bv = s.beta.spatial();
    if (!(b0 > 0.0) || !(b0 - norm3(bv) > 0.0))
        return std::numeric_limits<double>::infinity();
    if (s.omega.max_abs() == 0.0) return 0.0;

    const double r1 = 1e8 * s.m;
    const double r2 = 2.0 * r1;
    const int n_theta = 32, n_phi = 64;
    double zeta = 0.0;
    for (int it = 0; it < n_theta; ++it) {
        const double ct = -1.0 + (2.0 * it + 1.0) / n_theta;
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int ip = 0; ip < n_phi; ++ip) {
            const double phi = 2.0 * M_PI * (ip + 0.5) / n_phi;
            const Vec3 nhat{st * std::cos(phi), st * std::sin(phi), ct};
            const double h1 =
                0.5 * norm3(b_star(s.omega, OnShellMomentum(scale3(nhat, r1), s.m))) / r1;
            const double h2 =
                0.5 * norm3(b_star(s.omega, OnShellMomentum(scale3(nhat, r2), s.m))) / r2;
            const double h = std::max(2.0 * h2 - h1, 0.0);  // Richardson in 1/R
            const double bn = b0 - dot3(bv, nhat);
            zeta = std::max(zeta, h / bn);
        }
    }
    return zeta;
}

double selection_criterion(const FluidState& s) {
    return selection_criterion(MultiplierSet::from_state(s));
}

MomentumGrid::MomentumGrid(const MultiplierSet& scale_source, const QuadratureSpec& spec,
                           int n_radial_override) {
    spec.validate();
    const double b0 = scale_source.beta[0];
    const Vec3 bv = scale_source.beta.spatial();
    min_beta_dot_n_ = b0 - norm3(bv);
    if (!(b0 > 0.0) || !(min_beta_dot_n_ > 0.0))
        throw std::invalid_argument("MomentumGrid: beta must be timelike and future-directed");
    mass_ = scale_source.m;

    // thermal scale: Doppler-shifted temperature, |mu|, and mass
    const double t_eff = 1.0 / min_beta_dot_n_;
    const double mu_abs = std::abs(scale_source.xi) * scale_source.temperature();
    p_max_ = spec.p_max_mult * std::max({t_eff, mu_abs, mass_});

    const int n_radial = n_radial_override > 0 ? n_radial_override : spec.n_radial;
    const int panel_order = std::min(n_radial, 16);
    const int n_panels = (n_radial + panel_order - 1) / panel_order;
    total_radial_ = panel_order * n_panels;

    std::vector<double> gx, gw;
    gauss_legendre(panel_order, gx, gw);
    r_.reserve(static_cast<std::size_t>(total_radial_));
    wr_.reserve(static_cast<std::size_t>(total_radial_));
    const double panel_width = p_max_ / n_panels;
    for (int pa = 0; pa < n_panels; ++pa) {
        const double lo = pa * panel_width;
        for (int i = 0; i < panel_order; ++i) {
            r_.push_back(lo + 0.5 * (gx[static_cast<std::size_t>(i)] + 1.0) * panel_width);
            wr_.push_back(0.5 * panel_width * gw[static_cast<std::size_t>(i)]);
        }
    }

    gauss_legendre(spec.n_theta, ct_, wct_);

    std::vector<double> px, pw;
    gauss_legendre(spec.n_phi, px, pw);
    phi_.resize(static_cast<std::size_t>(spec.n_phi));
    wphi_.resize(static_cast<std::size_t>(spec.n_phi));
    for (int i = 0; i < spec.n_phi; ++i) {
        phi_[static_cast<std::size_t>(i)] = M_PI * (px[static_cast<std::size_t>(i)] + 1.0);
        wphi_[static_cast<std::size_t>(i)] = M_PI * pw[static_cast<std::size_t>(i)];
    }
}

void MomentumGrid::integrate(int ncomp, const BatchIntegrand& f, std::span<double> value,
                             std::span<double> l1_magnitude) const {
    const std::size_t n_r = r_.size();
    const std::size_t n_t = ct_.size();
    const std::size_t n_p = phi_.size();
    const std::size_t n_slices = n_r * n_t;
    const std::size_t nc = static_cast<std::size_t>(ncomp);

    std::vector<double> partial(n_slices * nc);
    std::vector<double> partial_l1(n_slices * nc);

    std::vector<double> cphi(n_p), sphi(n_p);
    for (std::size_t i = 0; i < n_p; ++i) {
        cphi[i] = std::cos(phi_[i]);
        sphi[i] = std::sin(phi_[i]);
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::mutex failure_mutex;
    auto work = [&]() {
        std::vector<double> px(n_p), py(n_p), pz(n_p), en(n_p), out(n_p * nc);
        for (;;) {
            const std::size_t sidx = next.fetch_add(1, std::memory_order_relaxed);
            if (sidx >= n_slices) break;
            if (failed.load(std::memory_order_relaxed)) break;
            try {
                const std::size_t ir = sidx / n_t;
                const std::size_t it = sidx % n_t;
                const double r = r_[ir];
                const double e_p = std::sqrt(mass_ * mass_ + r * r);
                const double ct = ct_[it];
                const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
                for (std::size_t ip = 0; ip < n_p; ++ip) {
                    px[ip] = r * st * cphi[ip];
                    py[ip] = r * st * sphi[ip];
                    pz[ip] = r * ct;
                    en[ip] = e_p;
                }
                NodeBatch nb{px, py, pz, en};
                f(nb, std::span<double>(out.data(), n_p * nc));
                const double base_w = wr_[ir] * wct_[it] * r * r / (kTwoPiCubed * e_p);
                for (std::size_t j = 0; j < nc; ++j) {
                    double acc = 0.0, acc_l1 = 0.0;
                    for (std::size_t ip = 0; ip < n_p; ++ip) {
                        const double v = wphi_[ip] * base_w * out[ip * nc + j];
                        acc += v;
                        acc_l1 += std::abs(v);
                    }
                    partial[sidx * nc + j] = acc;
                    partial_l1[sidx * nc + j] = acc_l1;
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failed.load(std::memory_order_relaxed)) {
                    failure = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                }
                break;
            }
        }
    };

    const int workers = std::min<int>(worker_count(), static_cast<int>(n_slices));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) std::rethrow_exception(failure);

    // fixed-order compensated reduction: identical for any worker count
    for (std::size_t j = 0; j < nc; ++j) {
        NeumaierAcc acc, acc_l1;
        for (std::size_t sidx = 0; sidx < n_slices; ++sidx) {
            acc.add(partial[sidx * nc + j]);
            acc_l1.add(partial_l1[sidx * nc + j]);
        }
        value[j] = acc.result();
        l1_magnitude[j] = acc_l1.result();
    }
}

IntegralResult integrate_dP(int ncomp, const BatchIntegrand& f, const MultiplierSet& s,
                            const QuadratureSpec& q) {
    q.validate();
    const double zeta = selection_criterion(s);
    if (!(zeta < 1.0 - q.admissibility_margin))
        throw InadmissibleState(zeta, q.admissibility_margin);

    const std::size_t nc = static_cast<std::size_t>(ncomp);
    std::vector<double> v0(nc), l10(nc), v1(nc), l11(nc);

    int n_radial = q.n_radial;
    MomentumGrid g0(s, q, n_radial);
    g0.integrate(ncomp, f, v0, l10);

    double last_rel_change = std::numeric_limits<double>::infinity();
    for (int ref = 1; ref <= q.max_refinements; ++ref) {
        n_radial *= 2;
        MomentumGrid g1(s, q, n_radial);
        g1.integrate(ncomp, f, v1, l11);

        double scale = 0.0, l1max = 0.0, err_max = 0.0;
        for (std::size_t j = 0; j < nc; ++j) {
            scale = std::max(scale, std::abs(v1[j]));
            l1max = std::max(l1max, l11[j]);
        }
        const double floor = 1e-13 * l1max;  // roundoff floor of the summation
        for (std::size_t j = 0; j < nc; ++j) err_max = std::max(err_max, std::abs(v1[j] - v0[j]));

        if (err_max <= std::max(q.rel_tol * scale, floor)) {
            IntegralResult res;
            res.value = v1;
            res.error_estimate.resize(nc);
            const double tail = scale * std::exp(-(1.0 - zeta) * g1.min_beta_dot_n() * g1.p_max());
            for (std::size_t j = 0; j < nc; ++j)
                res.error_estimate[j] = std::abs(v1[j] - v0[j]) + tail;
            res.refinements_used = ref;
            res.converged = true;
            return res;
        }
        last_rel_change = err_max / std::max(scale, 1e-300);
        std::swap(v0, v1);
        std::swap(l10, l11);
    }
    throw NotConverged(last_rel_change, q.rel_tol, q.max_refinements);
}

IntegralResult integrate_dP(int ncomp, const BatchIntegrand& f, const FluidState& s,
                            const QuadratureSpec& q) {
    return integrate_dP(ncomp, f, MultiplierSet::from_state(s), q);
}

double integrate_dP_radial_oracle(const std::function<double(double, double)>& f_radial,
                                  const MultiplierSet& s, const QuadratureSpec& q) {
    q.validate();
    const double m = s.m;
    auto g = [&](double p) {
        const double e_p = std::sqrt(m * m + p * p);
        return p * p / e_p * f_radial(p, e_p);
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    double error = 0.0, l1 = 0.0;
    const double val = integrator.integrate(g, 1e-12, &error, &l1);
    constexpr double inv_two_pi2 = 1.0 / (2.0 * M_PI * M_PI);
    if (error > 1e-8 * std::max(std::abs(val), 1e-300) && error > 1e-13 * l1)
        throw NotConverged(error / std::max(std::abs(val), 1e-300), 1e-8, 0);
    return inv_two_pi2 * val;
}

} // namespace spinstat
