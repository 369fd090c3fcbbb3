#include "spinstat/currents.hpp"

#include <cmath>
#include <stdexcept>

#include "spinstat/kernels/mode_kernel.hpp"

namespace spinstat {

double SymTensor4::max_abs() const {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

namespace {

constexpr int spin_slot[4][4] = {
    {-1, 0, 1, 2},
    {0, -1, 3, 4},
    {1, 3, -1, 5},
    {2, 4, 5, -1},
};

// upper-triangle order used for the 10 independent T components
constexpr int sym_pairs[10][2] = {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1},
                                  {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}};

struct FusedSpec {
    bool N = false, T = false, S = false, Ncal = false, Sent = false, chi = false;
    int ncomp() const {
        return (N ? 4 : 0) + (T ? 10 : 0) + (S ? 24 : 0) + (Ncal ? 4 : 0) + (Sent ? 4 : 0) +
               (chi ? 1 : 0);
    }
};

FusedSpec spec_for(CurrentKind kind) {
    FusedSpec fs;
    switch (kind) {
        case CurrentKind::baryon: fs.N = true; break;
        case CurrentKind::energy_momentum: fs.T = true; break;
        case CurrentKind::spin: fs.S = true; break;
        case CurrentKind::aux: fs.Ncal = true; break;
        case CurrentKind::entropy: fs.Sent = true; break;
        case CurrentKind::generating: fs.chi = true; break;
    }
    return fs;
}

// eps^{mu nu gamma delta} a_gamma p_delta for the six (mu < nu) pairs,
// from covariant components. Cross-checked against the levi_civita loop
// in the unit tests.
inline void epsilon_ap(const double a[4], const double p[4], double t[6]) {
    t[0] = a[2] * p[3] - a[3] * p[2];
    t[1] = a[3] * p[1] - a[1] * p[3];
    t[2] = a[1] * p[2] - a[2] * p[1];
    t[3] = a[0] * p[3] - a[3] * p[0];
    t[4] = a[2] * p[0] - a[0] * p[2];
    t[5] = a[0] * p[1] - a[1] * p[0];
}

BatchIntegrand make_fused_integrand(FusedSpec fs, const MultiplierSet& s, StatisticsKind stats,
                                    double suppression) {
    const EBDecomposition eb = eb_decompose(s.omega);
    const double m = s.m;
    const double xi = s.xi;
    const double beta0 = s.beta[0];
    const Vec3 betav = s.beta.spatial();
    const int k = fs.ncomp();

    return [=](const NodeBatch& nb, std::span<double> out) {
        thread_local std::vector<double> bp, sa, gsum, gsigned, gratio, pterm, eterm, cterm, acov;
        const std::size_t n = nb.size();
        bp.resize(n);
        sa.resize(n);
        if (fs.N) gsigned.resize(n);
        if (fs.T) gsum.resize(n);
        if (fs.S) {
            gratio.resize(n);
            acov.resize(4 * n);
        }
        if (fs.Ncal) pterm.resize(n);
        if (fs.Sent) eterm.resize(n);
        if (fs.chi) cterm.resize(n);

        for (std::size_t i = 0; i < n; ++i) {
            const double e_p = nb.energy[i];
            const Vec3 p{nb.px[i], nb.py[i], nb.pz[i]};
            bp[i] = beta0 * e_p - dot3(betav, p);
            const Vec3 w = sub3(scale3(eb.b, e_p), cross3(p, eb.e));
            const double pb = dot3(p, eb.b);
            const Vec3 bs = scale3(sub3(w, scale3(p, pb / (e_p + m))), 1.0 / m);
            sa[i] = 0.5 * norm3(bs);
            if (fs.S) {
                acov[4 * i + 0] = -pb / (2.0 * m);
                acov[4 * i + 1] = w[0] / (2.0 * m);
                acov[4 * i + 2] = w[1] / (2.0 * m);
                acov[4 * i + 3] = w[2] / (2.0 * m);
            }
        }

        kernels::ModeBatchIO io;
        io.beta_dot_p = bp;
        io.sqrt_minus_a2 = sa;
        if (fs.N) io.signed_sum_g = gsigned;
        if (fs.T) io.sum_g = gsum;
        if (fs.S) io.spin_sum_over_s = gratio;
        if (fs.Ncal) io.pressure_term = pterm;
        if (fs.Sent) io.entropy_term = eterm;
        if (fs.chi) io.chi_term = cterm;
        kernels::mode_batch(stats, xi, suppression, io);

        for (std::size_t i = 0; i < n; ++i) {
            const double pmu[4] = {nb.energy[i], nb.px[i], nb.py[i], nb.pz[i]};
            std::size_t pos = i * static_cast<std::size_t>(k);
            if (fs.N) {
                for (int mu = 0; mu < 4; ++mu) out[pos++] = gsigned[i] * pmu[mu];
            }
            if (fs.T) {
                for (const auto& pr : sym_pairs) out[pos++] = gsum[i] * pmu[pr[0]] * pmu[pr[1]];
            }
            if (fs.S) {
                const double p_cov[4] = {pmu[0], -pmu[1], -pmu[2], -pmu[3]};
                double t[6];
                epsilon_ap(&acov[4 * i], p_cov, t);
                const double coeff = gratio[i] / (2.0 * m);
                for (int lam = 0; lam < 4; ++lam)
                    for (int kk = 0; kk < 6; ++kk) out[pos++] = coeff * pmu[lam] * t[kk];
            }
            if (fs.Ncal) {
                for (int mu = 0; mu < 4; ++mu) out[pos++] = pterm[i] * pmu[mu];
            }
            if (fs.Sent) {
                for (int mu = 0; mu < 4; ++mu) out[pos++] = eterm[i] * pmu[mu];
            }
            if (fs.chi) out[pos++] = cterm[i];
        }
    };
}

FourVector four_from(std::span<const double> v, int off = 0) {
    return {v[static_cast<std::size_t>(off)], v[static_cast<std::size_t>(off + 1)],
            v[static_cast<std::size_t>(off + 2)], v[static_cast<std::size_t>(off + 3)]};
}

SymTensor4 sym_from(std::span<const double> v, int off = 0) {
    SymTensor4 t;
    for (int kk = 0; kk < 10; ++kk) {
        const double val = v[static_cast<std::size_t>(off + kk)];
        t.at(sym_pairs[kk][0], sym_pairs[kk][1]) = val;
        t.at(sym_pairs[kk][1], sym_pairs[kk][0]) = val;
    }
    return t;
}

SpinTensor3 spin_from(std::span<const double> v, int off = 0) {
    SpinTensor3 t;
    for (int lam = 0; lam < 4; ++lam)
        for (int kk = 0; kk < 6; ++kk) t.indep(lam, kk) = v[static_cast<std::size_t>(off + lam * 6 + kk)];
    return t;
}

} // namespace

double SpinTensor3::operator()(int lam, int mu, int nu) const {
    if (mu == nu) return 0.0;
    const int k = spin_slot[mu][nu];
    const double v = indep(lam, k);
    return mu < nu ? v : -v;
}

double SpinTensor3::max_abs() const {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

int current_component_count(CurrentKind kind) { return spec_for(kind).ncomp(); }

BatchIntegrand make_current_integrand(CurrentKind kind, const MultiplierSet& s,
                                      StatisticsKind stats, double suppression) {
    return make_fused_integrand(spec_for(kind), s, stats, suppression);
}

IntegralResult evaluate_current(CurrentKind kind, const MultiplierSet& s, const QuadratureSpec& q,
                                StatisticsKind stats, double suppression) {
    return integrate_dP(current_component_count(kind), make_current_integrand(kind, s, stats, suppression),
                        s, q);
}

CurrentsOnGrid evaluate_all_on_grid(const MultiplierSet& s, const MomentumGrid& grid,
                                    StatisticsKind stats, double suppression) {
    FusedSpec fs;
    fs.N = fs.T = fs.S = fs.Ncal = fs.Sent = fs.chi = true;
    const int k = fs.ncomp();
    std::vector<double> value(static_cast<std::size_t>(k)), l1(static_cast<std::size_t>(k));
    grid.integrate(k, make_fused_integrand(fs, s, stats, suppression), value, l1);
    CurrentsOnGrid r;
    r.N = four_from(value, 0);
    r.T = sym_from(value, 4);
    r.S = spin_from(value, 14);
    r.Ncal = four_from(value, 38);
    r.S_entropy = four_from(value, 42);
    r.chi = value[46];
    return r;
}

double evaluate_generating_on_grid(const MultiplierSet& s, const MomentumGrid& grid,
                                   StatisticsKind stats, double suppression) {
    FusedSpec fs;
    fs.chi = true;
    std::vector<double> value(1), l1(1);
    grid.integrate(1, make_fused_integrand(fs, s, stats, suppression), value, l1);
    return value[0];
}

FourVector baryon_current(const MultiplierSet& s, const QuadratureSpec& q, StatisticsKind stats) {
    return four_from(evaluate_current(CurrentKind::baryon, s, q, stats).value);
}

SymTensor4 energy_momentum(const MultiplierSet& s, const QuadratureSpec& q, StatisticsKind stats) {
    return sym_from(evaluate_current(CurrentKind::energy_momentum, s, q, stats).value);
}

SpinTensor3 spin_tensor(const MultiplierSet& s, const QuadratureSpec& q, StatisticsKind stats) {
    return spin_from(evaluate_current(CurrentKind::spin, s, q, stats).value);
}

FourVector aux_current(const MultiplierSet& s, const QuadratureSpec& q, StatisticsKind stats) {
    return four_from(evaluate_current(CurrentKind::aux, s, q, stats).value);
}

FourVector entropy_current(const MultiplierSet& s, const QuadratureSpec& q, StatisticsKind stats) {
    return four_from(evaluate_current(CurrentKind::entropy, s, q, stats).value);
}

double generating_function(const MultiplierSet& s, const QuadratureSpec& q, StatisticsKind stats) {
    return evaluate_current(CurrentKind::generating, s, q, stats).value[0];
}

CurrentsBundle compute_bundle(const MultiplierSet& s, const QuadratureSpec& q, StatisticsKind stats) {
    CurrentsBundle b;
    b.zeta = selection_criterion(s);

    IntegralResult rn = evaluate_current(CurrentKind::baryon, s, q, stats);
    IntegralResult rt = evaluate_current(CurrentKind::energy_momentum, s, q, stats);
    IntegralResult rs = evaluate_current(CurrentKind::spin, s, q, stats);
    IntegralResult ra = evaluate_current(CurrentKind::aux, s, q, stats);
    IntegralResult re = evaluate_current(CurrentKind::entropy, s, q, stats);
    IntegralResult rc = evaluate_current(CurrentKind::generating, s, q, stats);

    b.N = four_from(rn.value);
    b.T = sym_from(rt.value);
    b.S = spin_from(rs.value);
    b.Ncal = four_from(ra.value);
    b.S_entropy = four_from(re.value);
    b.chi = rc.value[0];
    b.N_err = rn.error_estimate;
    b.T_err = rt.error_estimate;
    b.S_err = rs.error_estimate;
    b.Ncal_err = ra.error_estimate;
    b.S_entropy_err = re.error_estimate;
    b.chi_err = rc.error_estimate[0];
    for (const IntegralResult* r : {&rn, &rt, &rs, &ra, &re, &rc})
        b.max_refinements_used = std::max(b.max_refinements_used, r->refinements_used);
    return b;
}

CurrentsBundle compute_bundle(const FluidState& s, const QuadratureSpec& q, StatisticsKind stats) {
    return compute_bundle(MultiplierSet::from_state(s), q, stats);
}

} // namespace spinstat
