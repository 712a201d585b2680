#include "acnsf/ac_solver.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <mutex>
#include <stdexcept>

#include "acnsf/initial_data.hpp"
#include "acnsf/norms.hpp"
#include "acnsf/operators.hpp"
#include "acnsf/projectors.hpp"

namespace acnsf {

ModePropagator linear_mode_propagator_split(double ksq_diffusion, double ksq_coupling,
                                            double eps, double mu, double dt) {
    ModePropagator out;
    out.transverse = std::exp(-mu * ksq_diffusion * dt);
    if (ksq_coupling == 0.0) return out;  // identity block: no divergence coupling

    // exp(A dt), A = [[-a, b], [c, 0]] = m I + B with m = -a/2, tr B = 0,
    // B^2 = q^2 I, q^2 = a^2/4 + b c.
    const double a = mu * ksq_diffusion;
    const double b = ksq_coupling;
    const double c = -1.0 / eps;
    const double m = -0.5 * a;
    const double qsq = 0.25 * a * a + b * c;
    double coshterm, sinhcterm;  // e^{m dt} cosh(q dt), e^{m dt} sinh(q dt)/q
    const double z = qsq * dt * dt;
    if (std::abs(z) < 1e-8) {
        const double em = std::exp(m * dt);
        coshterm = em * (1.0 + z / 2.0 + z * z / 24.0);
        sinhcterm = em * dt * (1.0 + z / 6.0 + z * z / 120.0);
    } else if (qsq > 0.0) {
        // both exponents are <= 0 (q <= |m| for eps > 0), so no overflow
        const double q = std::sqrt(qsq);
        const double ep = std::exp((m + q) * dt);
        const double en = std::exp((m - q) * dt);
        coshterm = 0.5 * (ep + en);
        sinhcterm = (ep - en) / (2.0 * q);
    } else {
        const double w = std::sqrt(-qsq);
        const double em = std::exp(m * dt);
        coshterm = em * std::cos(w * dt);
        sinhcterm = em * std::sin(w * dt) / w;
    }
    out.m00 = coshterm + sinhcterm * (-0.5 * a);
    out.m01 = sinhcterm * b;
    out.m10 = sinhcterm * c;
    out.m11 = coshterm + sinhcterm * (0.5 * a);
    return out;
}

ModePropagator linear_mode_propagator(double ksq, double eps, double mu, double dt) {
    return linear_mode_propagator_split(ksq, ksq, eps, mu, dt);
}

namespace {

struct ModeFactors {
    double theta = 1.0;
    double transverse = 1.0;
    double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
    double inv_ksq_div = 0.0;  // 0 marks modes without divergence coupling
};

struct PropagatorTable {
    int dim = 0, n = 0;
    double length = 0, eps = 0, mu = 0, kappa = 0, dt = 0;
    std::vector<ModeFactors> f;

    bool matches(const GridSpec& g, double e, double m, double k, double d) const {
        return dim == g.dim && n == g.n && length == g.length && eps == e && mu == m &&
               kappa == k && dt == d;
    }
};

const PropagatorTable& propagator_table(const GridSpec& g, double eps, double mu, double kappa,
                                        double dt) {
    // deque keeps element references stable; entries are never evicted so
    // concurrent runs can hold them safely
    static std::deque<PropagatorTable> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    for (const PropagatorTable& t : cache)
        if (t.matches(g, eps, mu, kappa, dt)) return t;

    PropagatorTable t;
    t.dim = g.dim;
    t.n = g.n;
    t.length = g.length;
    t.eps = eps;
    t.mu = mu;
    t.kappa = kappa;
    t.dt = dt;
    t.f.resize(g.total());
    const int n = g.n;
    const int nk = g.dim == 3 ? n : 1;
    std::size_t flat = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < nk; ++k, ++flat) {
                const double kd[3] = {g.k_derivative(i), g.k_derivative(j),
                                      g.dim == 3 ? g.k_derivative(k) : 0.0};
                const double kf[3] = {g.k_full(i), g.k_full(j), g.dim == 3 ? g.k_full(k) : 0.0};
                double ksq_diff = 0.0, ksq_div = 0.0;
                for (int a = 0; a < g.dim; ++a) {
                    ksq_diff += kf[a] * kf[a];
                    ksq_div += kd[a] * kd[a];
                }
                ModeFactors& m = t.f[flat];
                m.theta = std::exp(-kappa * ksq_diff * dt);
                ModePropagator prop =
                    linear_mode_propagator_split(ksq_diff, ksq_div, eps, mu, dt);
                m.transverse = prop.transverse;
                m.m00 = prop.m00;
                m.m01 = prop.m01;
                m.m10 = prop.m10;
                m.m11 = prop.m11;
                m.inv_ksq_div = ksq_div > 0.0 ? 1.0 / ksq_div : 0.0;
            }
    cache.push_back(std::move(t));
    return cache.back();
}

// One exact linear substep on (u, theta, p): per-mode heat factors plus
// the 2x2 longitudinal update, from the cached per-mode table.
void apply_linear(ACState& st, double dt) {
    const GridSpec& g = st.grid();
    const PropagatorTable& table = propagator_table(g, st.eps, st.mu, st.kappa, dt);
    const int n = g.n;
    const int dim = g.dim;
    const int nk = dim == 3 ? n : 1;
    std::size_t flat = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double kdi = g.k_derivative(i);
            const double kdj = g.k_derivative(j);
            for (int k = 0; k < nk; ++k, ++flat) {
                const ModeFactors& m = table.f[flat];
                st.theta.c[flat] *= m.theta;
                if (m.inv_ksq_div == 0.0) {
                    for (int a = 0; a < dim; ++a) st.u[a].c[flat] *= m.transverse;
                    continue;
                }
                const double kd[3] = {kdi, kdj, dim == 3 ? g.k_derivative(k) : 0.0};
                cplx kdotu{0.0, 0.0};
                for (int a = 0; a < dim; ++a) kdotu += kd[a] * st.u[a].c[flat];
                const cplx s = cplx{0.0, 1.0} * kdotu;  // divergence coefficient
                const cplx ph = st.p.c[flat];
                const cplx s_new = m.m00 * s + m.m01 * ph;
                const cplx p_new = m.m10 * s + m.m11 * ph;
                // u = transverse part * heat + longitudinal reconstruction
                const cplx par_scale = cplx{0.0, -1.0} * (s_new * m.inv_ksq_div);
                const cplx par_old = kdotu * m.inv_ksq_div;
                for (int a = 0; a < dim; ++a) {
                    const cplx upar_old = kd[a] * par_old;
                    const cplx uperp = st.u[a].c[flat] - upar_old;
                    st.u[a].c[flat] = m.transverse * uperp + kd[a] * par_scale;
                }
                st.p.c[flat] = p_new;
            }
        }
    }
}

}  // namespace

Tendency nonlinear_rhs(const ACState& state) {
    const GridSpec& g = state.grid();
    const int dim = g.dim;

    SpectralField divu = divergence(state.u);

    std::vector<std::vector<double>> pu(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) pu[static_cast<std::size_t>(a)] = to_physical_padded(state.u[a]);
    std::vector<double> pdiv = to_physical_padded(divu);
    std::vector<double> pth = to_physical_padded(state.theta);

    // partial_j u_i and partial_j theta on the padded grid
    std::vector<std::vector<double>> pgu(static_cast<std::size_t>(dim * dim));
    for (int jd = 0; jd < dim; ++jd)
        for (int id = 0; id < dim; ++id)
            pgu[static_cast<std::size_t>(jd * dim + id)] =
                to_physical_padded(partial_derivative(state.u[id], jd));
    std::vector<std::vector<double>> pgt(static_cast<std::size_t>(dim));
    for (int jd = 0; jd < dim; ++jd)
        pgt[static_cast<std::size_t>(jd)] = to_physical_padded(partial_derivative(state.theta, jd));

    const std::size_t np = pdiv.size();
    Tendency out{VectorField(g), SpectralField(g)};
    std::vector<double> work(np);
    for (int id = 0; id < dim; ++id) {
        for (std::size_t x = 0; x < np; ++x) {
            double adv = 0.0;
            for (int jd = 0; jd < dim; ++jd)
                adv += pu[static_cast<std::size_t>(jd)][x] *
                       pgu[static_cast<std::size_t>(jd * dim + id)][x];
            work[x] = -adv - 0.5 * pdiv[x] * pu[static_cast<std::size_t>(id)][x];
        }
        out.du[id] = from_physical_padded(g, work);
    }
    for (std::size_t x = 0; x < np; ++x) {
        double adv = 0.0;
        for (int jd = 0; jd < dim; ++jd)
            adv += pu[static_cast<std::size_t>(jd)][x] * pgt[static_cast<std::size_t>(jd)][x];
        work[x] = -adv - 0.5 * pdiv[x] * pth[x];
    }
    out.dtheta = from_physical_padded(g, work);
    return out;
}

VectorField momentum_nonlinearity(const VectorField& u) {
    const GridSpec& g = u.grid();
    const int dim = g.dim;
    SpectralField divu = divergence(u);
    std::vector<std::vector<double>> pu(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) pu[static_cast<std::size_t>(a)] = to_physical_padded(u[a]);
    std::vector<double> pdiv = to_physical_padded(divu);
    std::vector<std::vector<double>> pgu(static_cast<std::size_t>(dim * dim));
    for (int jd = 0; jd < dim; ++jd)
        for (int id = 0; id < dim; ++id)
            pgu[static_cast<std::size_t>(jd * dim + id)] =
                to_physical_padded(partial_derivative(u[id], jd));
    const std::size_t np = pdiv.size();
    VectorField out(g);
    std::vector<double> work(np);
    for (int id = 0; id < dim; ++id) {
        for (std::size_t x = 0; x < np; ++x) {
            double adv = 0.0;
            for (int jd = 0; jd < dim; ++jd)
                adv += pu[static_cast<std::size_t>(jd)][x] *
                       pgu[static_cast<std::size_t>(jd * dim + id)][x];
            work[x] = adv + 0.5 * pdiv[x] * pu[static_cast<std::size_t>(id)][x];
        }
        out[id] = from_physical_padded(g, work);
    }
    return out;
}

double energy(const ACState& state) {
    const double V = state.grid().volume();
    double s = 0.0;
    for (int a = 0; a < state.u.dim(); ++a)
        for (const cplx& v : state.u[a].c) s += 0.5 * std::norm(v);
    for (const cplx& v : state.theta.c) s += 0.5 * std::norm(v);
    for (const cplx& v : state.p.c) s += 0.5 * state.eps * std::norm(v);
    return s * V;
}

double advective_dt_limit(const ACState& state) {
    const double vmax = max_abs_physical(state.u);
    if (vmax <= 0.0) return std::numeric_limits<double>::infinity();
    return 0.9 * state.grid().spacing() / vmax;
}

ACState step(const ACState& state, double dt, double* dissipation, bool nonlinear) {
    if (!(dt > 0.0)) throw std::invalid_argument("ac_solver.step: dt must be positive");
    if (nonlinear) {
        const double limit = advective_dt_limit(state);
        if (dt > limit) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "ac_solver.step: CFL violation: dt=%.6g exceeds admissible dt=%.6g",
                          dt, limit);
            throw std::runtime_error(buf);
        }
    }

    ACState st = state;
    double e0 = energy(st);
    apply_linear(st, 0.5 * dt);
    double e1 = energy(st);
    if (dissipation) *dissipation += e0 - e1;

    if (nonlinear) {
        Tendency k1 = nonlinear_rhs(st);
        ACState mid = st;
        axpy(mid.u, 0.5 * dt, k1.du);
        axpy(mid.theta, 0.5 * dt, k1.dtheta);
        Tendency k2 = nonlinear_rhs(mid);
        axpy(st.u, dt, k2.du);
        axpy(st.theta, dt, k2.dtheta);
    }

    double e2 = energy(st);
    apply_linear(st, 0.5 * dt);
    double e3 = energy(st);
    if (dissipation) *dissipation += e2 - e3;

    st.t = state.t + dt;
    return st;
}

namespace {

std::size_t mode_flat_index(const GridSpec& g, const std::array<int, 3>& mode) {
    auto wrap = [&](int m) { return m >= 0 ? m : m + g.n; };
    if (g.dim == 2) return static_cast<std::size_t>(wrap(mode[0])) * g.n + wrap(mode[1]);
    return (static_cast<std::size_t>(wrap(mode[0])) * g.n + wrap(mode[1])) * g.n + wrap(mode[2]);
}

double nonlinear_l32_norm(const ACState& st) {
    // ||(u.grad)u + (div u) u / 2||_{L^{3/2}} with the pointwise euclidean magnitude
    Tendency tend = nonlinear_rhs(st);
    std::vector<std::vector<double>> phys;
    for (int a = 0; a < st.u.dim(); ++a) phys.push_back(to_physical(tend.du[a]));
    std::vector<double> mag(phys[0].size());
    for (std::size_t i = 0; i < mag.size(); ++i) {
        double sq = 0.0;
        for (const auto& p : phys) sq += p[i] * p[i];
        mag[i] = std::sqrt(sq);
    }
    double cell = 1.0;
    for (int a = 0; a < st.grid().dim; ++a) cell *= st.grid().spacing();
    return lp_norm_physical(mag, 1.5, cell);
}

DiagnosticsRecord make_record(const ACState& st, double D, double E0) {
    DiagnosticsRecord r;
    r.t = st.t;
    r.E = energy(st);
    r.D = D;
    r.balance_residual = std::abs(r.E + D - E0);
    r.div_u_L2 = norm_l2(divergence(st.u));
    VectorField qu = project_Q(st.u);
    r.Qu_L2 = norm_l2(qu);
    r.Qu_L4 = spatial_norm(qu, NormSpec::lebesgue(4.0));
    r.sqrt_eps_p_L2 = std::sqrt(st.eps) * norm_l2(st.p);
    r.u_L2 = norm_l2(st.u);
    r.theta_L2 = norm_l2(st.theta);
    return r;
}

}  // namespace

RunResult run_from_state(const ACState& initial, const RunConfig& config,
                         const RunOptions& options) {
    ACState st = initial;
    double dt = config.dt;
    if (!(dt > 0.0)) {
        if (!(config.cfl > 0.0))
            throw std::invalid_argument("ac_solver.run: either dt or cfl must be set");
        const double limit = advective_dt_limit(st);
        dt = std::isinf(limit) ? config.T / 100.0 : config.cfl / 0.9 * limit;
    }
    const double nreal = config.T / dt;
    const long long nsteps = std::llround(nreal);
    if (nsteps < 1 || std::abs(nreal - static_cast<double>(nsteps)) > 1e-6)
        throw std::invalid_argument("ac_solver.run: T must be an integer multiple of dt");
    if (nsteps % config.save_stride != 0)
        throw std::invalid_argument("ac_solver.run: save_stride must divide the step count");

    RunResult res;
    res.dt_used = dt;
    res.steps = static_cast<int>(nsteps);
    res.degenerate_eps = config.eps >= 1.0;
    res.traj.grid = st.grid();
    res.traj.dt_sample = dt * config.save_stride;

    const double E0 = energy(st);
    double D = 0.0;

    auto save = [&](const ACState& s) {
        DiagnosticsRecord rec = make_record(s, D, E0);
        if (!std::isfinite(rec.E) || !std::isfinite(rec.div_u_L2)) {
            char buf[120];
            std::snprintf(buf, sizeof buf, "ac_solver.run: non-finite state at t=%.6g", s.t);
            throw std::runtime_error(buf);
        }
        res.diagnostics.push_back(rec);
        res.traj.times.push_back(s.t);
        if (options.store_velocity) res.traj.u.push_back(s.u);
        if (options.store_theta) res.traj.theta.push_back(s.theta);
        if (options.store_pressure) res.traj.p.push_back(s.p);
        if (options.track_mode)
            res.mode_series.push_back(s.p.c[mode_flat_index(s.grid(), *options.track_mode)]);
        if (options.record_nonlinear_l32) res.nonlinear_l32.push_back(nonlinear_l32_norm(s));
    };

    save(st);
    for (long long i = 1; i <= nsteps; ++i) {
        st = step(st, dt, &D, config.nonlinear);
        if (i % config.save_stride == 0) save(st);
    }
    res.final_state = std::move(st);
    return res;
}

RunResult run(const RunConfig& config, const RunOptions& options) {
    ACState st = make_initial_state(config.grid, config.family, config.seed, config.eps,
                                    config.mu, config.kappa, config.p0_mode);
    return run_from_state(st, config, options);
}

}  // namespace acnsf
