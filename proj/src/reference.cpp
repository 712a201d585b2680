#include "acnsf/reference.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "acnsf/norms.hpp"
#include "acnsf/operators.hpp"
#include "acnsf/projectors.hpp"
#include "acnsf/random_fields.hpp"

namespace acnsf {

RefState make_ref_state(const ACState& ac) {
    RefState r;
    r.u = project_P(ac.u);
    r.theta = ac.theta;
    r.mu = ac.mu;
    r.kappa = ac.kappa;
    r.t = ac.t;
    return r;
}

double ref_advective_dt_limit(const RefState& state) {
    const double vmax = max_abs_physical(state.u);
    if (vmax <= 0.0) return std::numeric_limits<double>::infinity();
    return 0.9 * state.grid().spacing() / vmax;
}

namespace {

void apply_diffusion(RefState& st, double dt) {
    const GridSpec& g = st.grid();
    const int n = g.n;
    const int dim = g.dim;
    const int nk = dim == 3 ? n : 1;
    std::size_t flat = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < nk; ++k, ++flat) {
                const double kf[3] = {g.k_full(i), g.k_full(j), dim == 3 ? g.k_full(k) : 0.0};
                double ksq = 0.0;
                for (int a = 0; a < dim; ++a) ksq += kf[a] * kf[a];
                const double fu = std::exp(-st.mu * ksq * dt);
                const double ft = std::exp(-st.kappa * ksq * dt);
                for (int a = 0; a < dim; ++a) st.u[a].c[flat] *= fu;
                st.theta.c[flat] *= ft;
            }
}

double ref_energy(const RefState& st) {
    const double V = st.grid().volume();
    double s = 0.0;
    for (int a = 0; a < st.u.dim(); ++a)
        for (const cplx& v : st.u[a].c) s += 0.5 * std::norm(v);
    for (const cplx& v : st.theta.c) s += 0.5 * std::norm(v);
    return s * V;
}

struct RefTendency {
    VectorField du;
    SpectralField dtheta;
};

// P[-(u.grad)u] and -u.grad theta, dealiased.
RefTendency ref_rhs(const RefState& st) {
    const GridSpec& g = st.grid();
    const int dim = g.dim;
    std::vector<std::vector<double>> pu(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) pu[static_cast<std::size_t>(a)] = to_physical_padded(st.u[a]);
    std::vector<std::vector<double>> pgu(static_cast<std::size_t>(dim * dim));
    for (int jd = 0; jd < dim; ++jd)
        for (int id = 0; id < dim; ++id)
            pgu[static_cast<std::size_t>(jd * dim + id)] =
                to_physical_padded(partial_derivative(st.u[id], jd));
    std::vector<std::vector<double>> pgt(static_cast<std::size_t>(dim));
    for (int jd = 0; jd < dim; ++jd)
        pgt[static_cast<std::size_t>(jd)] = to_physical_padded(partial_derivative(st.theta, jd));

    const std::size_t np = pu[0].size();
    RefTendency out{VectorField(g), SpectralField(g)};
    std::vector<double> work(np);
    for (int id = 0; id < dim; ++id) {
        for (std::size_t x = 0; x < np; ++x) {
            double adv = 0.0;
            for (int jd = 0; jd < dim; ++jd)
                adv += pu[static_cast<std::size_t>(jd)][x] *
                       pgu[static_cast<std::size_t>(jd * dim + id)][x];
            work[x] = -adv;
        }
        out.du[id] = from_physical_padded(g, work);
    }
    out.du = project_P(out.du);
    for (std::size_t x = 0; x < np; ++x) {
        double adv = 0.0;
        for (int jd = 0; jd < dim; ++jd)
            adv += pu[static_cast<std::size_t>(jd)][x] * pgt[static_cast<std::size_t>(jd)][x];
        work[x] = -adv;
    }
    out.dtheta = from_physical_padded(g, work);
    return out;
}

}  // namespace

RefState ref_step(const RefState& state, double dt, double* dissipation) {
    if (!(dt > 0.0)) throw std::invalid_argument("incompressible_reference.ref_step: dt must be positive");
    const double limit = ref_advective_dt_limit(state);
    if (dt > limit) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "incompressible_reference.ref_step: CFL violation: dt=%.6g exceeds "
                      "admissible dt=%.6g",
                      dt, limit);
        throw std::runtime_error(buf);
    }
    RefState st = state;
    double e0 = ref_energy(st);
    apply_diffusion(st, 0.5 * dt);
    double e1 = ref_energy(st);
    if (dissipation) *dissipation += e0 - e1;

    RefTendency k1 = ref_rhs(st);
    RefState mid = st;
    axpy(mid.u, 0.5 * dt, k1.du);
    axpy(mid.theta, 0.5 * dt, k1.dtheta);
    mid.u = project_P(mid.u);
    RefTendency k2 = ref_rhs(mid);
    axpy(st.u, dt, k2.du);
    axpy(st.theta, dt, k2.dtheta);
    st.u = project_P(st.u);

    double e2 = ref_energy(st);
    apply_diffusion(st, 0.5 * dt);
    double e3 = ref_energy(st);
    if (dissipation) *dissipation += e2 - e3;

    st.t = state.t + dt;
    return st;
}

RefRunResult ref_run(const RefState& initial, const RunConfig& config,
                     const RunOptions& options) {
    RefState st = initial;
    const double dt = config.dt;
    if (!(dt > 0.0))
        throw std::invalid_argument("incompressible_reference.ref_run: dt must be set");
    const double nreal = config.T / dt;
    const long long nsteps = std::llround(nreal);
    if (nsteps < 1 || std::abs(nreal - static_cast<double>(nsteps)) > 1e-6)
        throw std::invalid_argument(
            "incompressible_reference.ref_run: T must be an integer multiple of dt");
    if (nsteps % config.save_stride != 0)
        throw std::invalid_argument(
            "incompressible_reference.ref_run: save_stride must divide the step count");

    RefRunResult res;
    res.traj.grid = st.grid();
    res.traj.dt_sample = dt * config.save_stride;
    const double E0 = ref_energy(st);
    double D = 0.0;

    auto save = [&](const RefState& s) {
        DiagnosticsRecord rec;
        rec.t = s.t;
        rec.E = ref_energy(s);
        rec.D = D;
        rec.balance_residual = std::abs(rec.E + D - E0);
        rec.div_u_L2 = norm_l2(divergence(s.u));
        rec.u_L2 = norm_l2(s.u);
        rec.theta_L2 = norm_l2(s.theta);
        if (!std::isfinite(rec.E)) {
            char buf[140];
            std::snprintf(buf, sizeof buf,
                          "incompressible_reference.ref_run: non-finite state at t=%.6g", s.t);
            throw std::runtime_error(buf);
        }
        res.diagnostics.push_back(rec);
        res.traj.times.push_back(s.t);
        if (options.store_velocity) res.traj.u.push_back(s.u);
        if (options.store_theta) res.traj.theta.push_back(s.theta);
    };

    save(st);
    for (long long i = 1; i <= nsteps; ++i) {
        st = ref_step(st, dt, &D);
        if (i % config.save_stride == 0) save(st);
    }
    res.final_state = std::move(st);
    return res;
}

SpectralField recover_pressure(const VectorField& u) {
    const double du = norm_l2(divergence(u));
    const double uscale = std::sqrt(grad_norm_sq(u));
    if (du > 1e-8 * std::max(uscale, 1e-300))
        throw std::invalid_argument(
            "incompressible_reference.recover_pressure: u is not divergence-free");
    const GridSpec& g = u.grid();
    const int dim = g.dim;
    // div((u.grad)u) assembled from dealiased pairwise products
    SpectralField div_adv(g);
    for (int id = 0; id < dim; ++id) {
        SpectralField adv_i(g);
        for (int jd = 0; jd < dim; ++jd) {
            SpectralField prod = dealias_product(u[jd], partial_derivative(u[id], jd));
            axpy(adv_i, 1.0, prod);
        }
        axpy(div_adv, 1.0, partial_derivative(adv_i, id));
    }
    SpectralField p = inverse_laplacian(div_adv);
    scale(p, -1.0);
    return p;
}

SpectralField pressure_from_velocity_gradient_trace(const VectorField& u) {
    const GridSpec& g = u.grid();
    const int dim = g.dim;
    SpectralField tr(g);
    for (int id = 0; id < dim; ++id)
        for (int jd = 0; jd < dim; ++jd) {
            SpectralField prod = dealias_product(partial_derivative(u[jd], id),
                                                 partial_derivative(u[id], jd));
            axpy(tr, 1.0, prod);
        }
    return inverse_laplacian(tr);
}

double WeakTestField::bump(double t) const {
    const double r = (t - t_center) / t_halfwidth;
    const double rsq = r * r;
    if (rsq >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - rsq));
}

double WeakTestField::bump_dt(double t) const {
    const double r = (t - t_center) / t_halfwidth;
    const double rsq = r * r;
    if (rsq >= 1.0) return 0.0;
    const double denom = 1.0 - rsq;
    return std::exp(-1.0 / denom) * (-2.0 * r / (denom * denom)) / t_halfwidth;
}

WeakTestField make_weak_test_field(const GridSpec& grid, std::uint64_t seed, double t_center,
                                   double t_halfwidth) {
    WeakTestField w;
    const int band = std::max(2, grid.n / 4);
    w.phi = random_solenoidal_field(grid, seed, smooth_spectrum(grid), band);
    w.phi_scalar = random_scalar_field_unit(grid, seed + 31u, smooth_spectrum(grid), band);
    w.t_center = t_center;
    w.t_halfwidth = t_halfwidth;
    return w;
}

namespace {

// Composite Simpson weights for uniformly spaced samples (3/8 rule tail
// when the segment count is odd).
std::vector<double> simpson_weights(std::size_t count, double h) {
    if (count < 3) throw std::invalid_argument("weak_residual: need at least 3 time samples");
    std::vector<double> w(count, 0.0);
    std::size_t segments = count - 1;
    std::size_t simpson_end = segments % 2 == 0 ? count - 1 : count - 4;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (segments % 2 != 0) {
        std::size_t i = count - 4;
        w[i] += 3.0 * h / 8.0;
        w[i + 1] += 9.0 * h / 8.0;
        w[i + 2] += 9.0 * h / 8.0;
        w[i + 3] += 3.0 * h / 8.0;
    }
    return w;
}

}  // namespace

std::vector<WeakResidualRow> weak_residual(const Trajectory& traj,
                                           const std::vector<WeakTestField>& tests,
                                           double mu, double kappa) {
    if (traj.u.size() != traj.times.size() || traj.theta.size() != traj.times.size())
        throw std::invalid_argument(
            "incompressible_reference.weak_residual: trajectory must store u and theta");
    const GridSpec& g = traj.grid;
    const int dim = g.dim;
    const std::vector<double> wq = simpson_weights(traj.times.size(), traj.dt_sample);

    std::vector<WeakResidualRow> rows;
    for (const WeakTestField& tf : tests) {
        const double phi_scale = norm_l2(tf.phi);
        if (norm_l2(divergence(tf.phi)) > 1e-10 * std::max(phi_scale, 1e-300))
            throw std::invalid_argument(
                "incompressible_reference.weak_residual: velocity test field is not "
                "divergence-free");

        // precompute grad phi and grad phi_scalar
        std::vector<VectorField> grad_phi;
        grad_phi.reserve(static_cast<std::size_t>(dim));
        for (int a = 0; a < dim; ++a) grad_phi.push_back(gradient(tf.phi[a]));
        VectorField grad_phis = gradient(tf.phi_scalar);

        double res_u = 0.0, den_u = 0.0, res_th = 0.0, den_th = 0.0;
        for (std::size_t s = 0; s < traj.times.size(); ++s) {
            const double t = traj.times[s];
            const double b = tf.bump(t);
            const double bdt = tf.bump_dt(t);
            if (b == 0.0 && bdt == 0.0) continue;
            const VectorField& u = traj.u[s];
            const SpectralField& th = traj.theta[s];

            // mu grad u : grad phi
            double visc = 0.0;
            for (int a = 0; a < dim; ++a) visc += inner_l2(gradient(u[a]), grad_phi[static_cast<std::size_t>(a)]);
            visc *= mu;
            // u_i u_j d_i phi_j
            double advect = 0.0;
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    advect += inner_l2(dealias_product(u[i], u[j]), grad_phi[static_cast<std::size_t>(j)][i]);
            // u . phi
            double mass = inner_l2(u, tf.phi);

            res_u += wq[s] * (visc * b - advect * b - mass * bdt);
            den_u += wq[s] * (std::abs(visc * b) + std::abs(advect * b) + std::abs(mass * bdt));

            double visc_th = kappa * inner_l2(gradient(th), grad_phis);
            double advect_th = 0.0;
            for (int i = 0; i < dim; ++i)
                advect_th += inner_l2(dealias_product(th, u[i]), grad_phis[i]);
            double mass_th = inner_l2(th, tf.phi_scalar);
            res_th += wq[s] * (visc_th * b - advect_th * b - mass_th * bdt);
            den_th += wq[s] * (std::abs(visc_th * b) + std::abs(advect_th * b) +
                               std::abs(mass_th * bdt));
        }
        WeakResidualRow row;
        row.velocity_residual = std::abs(res_u);
        row.velocity_normalized = den_u > 0.0 ? std::abs(res_u) / den_u : 0.0;
        row.theta_residual = std::abs(res_th);
        row.theta_normalized = den_th > 0.0 ? std::abs(res_th) / den_th : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace acnsf
