#include "acnsf/convergence_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "acnsf/initial_data.hpp"
#include "acnsf/norms.hpp"
#include "acnsf/operators.hpp"
#include "acnsf/projectors.hpp"

namespace acnsf {

std::vector<std::string> all_sweep_norms() {
    return {"Qu_L2t_L4x",  "Qu_L2t_L2x",      "Pu_err_L2tx", "theta_err_L2tx",
            "p_L4t_Wm24",  "dtp_L4t_Wm34",    "divu_L2tx",   "sqrt_eps_p_LinfL2",
            "nonlin_L1t_L32x", "divu0_Hm1",   "p0_L2"};
}

namespace {

bool want(const std::vector<std::string>& keys, const std::string& k) {
    return std::find(keys.begin(), keys.end(), k) != keys.end();
}

std::vector<double> column(const std::vector<DiagnosticsRecord>& d,
                           double DiagnosticsRecord::*field) {
    std::vector<double> out;
    out.reserve(d.size());
    for (const auto& r : d) out.push_back(r.*field);
    return out;
}

}  // namespace

SweepReport epsilon_sweep(const SweepConfig& cfg) {
    if (cfg.eps_list.empty())
        throw std::invalid_argument("convergence_lab.epsilon_sweep: empty eps list");
    for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
        if (!(cfg.eps_list[i] > 0.0))
            throw std::invalid_argument("convergence_lab.epsilon_sweep: eps must be > 0");
        if (i > 0 && !(cfg.eps_list[i] < cfg.eps_list[i - 1]))
            throw std::invalid_argument(
                "convergence_lab.epsilon_sweep: eps list must be strictly decreasing");
    }
    std::vector<std::string> keys = cfg.norms.empty() ? all_sweep_norms() : cfg.norms;
    for (const auto& k : keys) {
        auto known = all_sweep_norms();
        if (!want(known, k))
            throw std::invalid_argument("convergence_lab.epsilon_sweep: unknown norm key " + k);
    }

    const bool need_ref = cfg.with_reference &&
                          (want(keys, "Pu_err_L2tx") || want(keys, "theta_err_L2tx") ||
                           cfg.record_pressure);

    SweepReport report;
    report.eps_list = cfg.eps_list;
    report.norm_keys = keys;
    report.T = cfg.base.T;
    report.window_factor = cfg.window_factor;
    report.seed = cfg.base.seed;

    // One reference run from the same (u0, theta0); its eps plays no role.
    if (need_ref) {
        ACState st0 = make_initial_state(cfg.base.grid, cfg.base.family, cfg.base.seed,
                                         cfg.eps_list.front(), cfg.base.mu, cfg.base.kappa,
                                         cfg.base.p0_mode);
        RunConfig rc = cfg.base;
        RunOptions ro;
        ro.store_velocity = true;
        ro.store_theta = true;
        report.reference = ref_run(make_ref_state(st0), rc, ro);
        report.has_reference = true;
    }

    for (double eps : cfg.eps_list) {
        try {
            ACState st0 = make_initial_state(cfg.base.grid, cfg.base.family, cfg.base.seed, eps,
                                             cfg.base.mu, cfg.base.kappa, cfg.base.p0_mode);
            const double p0_l2 = norm_l2(st0.p);
            const double divu0_hm1 =
                spatial_norm(divergence(st0.u), NormSpec::sobolev(-1.0, 2.0));

            RunConfig rc = cfg.base;
            rc.eps = eps;
            RunOptions ro;
            ro.store_velocity = want(keys, "Pu_err_L2tx");
            ro.store_theta = want(keys, "theta_err_L2tx");
            ro.store_pressure =
                cfg.record_pressure || want(keys, "p_L4t_Wm24") || want(keys, "dtp_L4t_Wm34");
            ro.track_mode = cfg.track_mode;
            ro.record_nonlinear_l32 = want(keys, "nonlin_L1t_L32x");
            RunResult res = run_from_state(st0, rc, ro);
            report.dt_sample = res.traj.dt_sample;

            EpsRecord rec;
            rec.eps = eps;
            rec.degenerate_eps = res.degenerate_eps;
            rec.diagnostics = res.diagnostics;
            rec.mode_series = std::move(res.mode_series);
            const double dts = res.traj.dt_sample;

            for (const auto& r : res.diagnostics)
                rec.max_balance_residual = std::max(rec.max_balance_residual, r.balance_residual);

            if (want(keys, "Qu_L2t_L4x"))
                rec.norms["Qu_L2t_L4x"] = space_time_norm_values(
                    column(res.diagnostics, &DiagnosticsRecord::Qu_L4), dts, 2.0);
            if (want(keys, "Qu_L2t_L2x"))
                rec.norms["Qu_L2t_L2x"] = space_time_norm_values(
                    column(res.diagnostics, &DiagnosticsRecord::Qu_L2), dts, 2.0);
            if (want(keys, "divu_L2tx"))
                rec.norms["divu_L2tx"] = space_time_norm_values(
                    column(res.diagnostics, &DiagnosticsRecord::div_u_L2), dts, 2.0);
            if (want(keys, "sqrt_eps_p_LinfL2"))
                rec.norms["sqrt_eps_p_LinfL2"] = space_time_norm_values(
                    column(res.diagnostics, &DiagnosticsRecord::sqrt_eps_p_L2), dts,
                    std::numeric_limits<double>::infinity());
            if (want(keys, "nonlin_L1t_L32x"))
                rec.norms["nonlin_L1t_L32x"] =
                    space_time_norm_values(res.nonlinear_l32, dts, 1.0);
            if (want(keys, "p0_L2")) rec.norms["p0_L2"] = p0_l2;
            if (want(keys, "divu0_Hm1")) rec.norms["divu0_Hm1"] = divu0_hm1;

            if (want(keys, "Pu_err_L2tx")) {
                if (!report.has_reference || report.reference.traj.u.size() != res.traj.u.size())
                    throw std::runtime_error("Pu_err_L2tx requires a matching reference run");
                std::vector<double> diffs;
                diffs.reserve(res.traj.u.size());
                for (std::size_t s = 0; s < res.traj.u.size(); ++s)
                    diffs.push_back(
                        norm_l2(subtract(project_P(res.traj.u[s]), report.reference.traj.u[s])));
                rec.norms["Pu_err_L2tx"] = space_time_norm_values(diffs, dts, 2.0);
            }
            if (want(keys, "theta_err_L2tx")) {
                if (!report.has_reference ||
                    report.reference.traj.theta.size() != res.traj.theta.size())
                    throw std::runtime_error("theta_err_L2tx requires a matching reference run");
                std::vector<double> diffs;
                diffs.reserve(res.traj.theta.size());
                for (std::size_t s = 0; s < res.traj.theta.size(); ++s)
                    diffs.push_back(
                        norm_l2(subtract(res.traj.theta[s], report.reference.traj.theta[s])));
                rec.norms["theta_err_L2tx"] = space_time_norm_values(diffs, dts, 2.0);
            }
            if (want(keys, "p_L4t_Wm24")) {
                std::vector<double> vals;
                vals.reserve(res.traj.p.size());
                for (const auto& p : res.traj.p)
                    vals.push_back(spatial_norm(p, NormSpec::sobolev(-2.0, 4.0)));
                rec.norms["p_L4t_Wm24"] = space_time_norm_values(vals, dts, 4.0);
            }
            if (want(keys, "dtp_L4t_Wm34")) {
                if (res.traj.p.size() < 3)
                    throw std::runtime_error("dtp_L4t_Wm34 needs at least 3 pressure samples");
                std::vector<double> vals;
                vals.reserve(res.traj.p.size() - 2);
                for (std::size_t s = 1; s + 1 < res.traj.p.size(); ++s) {
                    SpectralField dp = subtract(res.traj.p[s + 1], res.traj.p[s - 1]);
                    scale(dp, 1.0 / (2.0 * dts));
                    vals.push_back(spatial_norm(dp, NormSpec::sobolev(-3.0, 4.0)));
                }
                rec.norms["dtp_L4t_Wm34"] = space_time_norm_values(vals, dts, 4.0);
            }
            if (cfg.record_pressure) {
                rec.pressure_traj.grid = res.traj.grid;
                rec.pressure_traj.dt_sample = dts;
                rec.pressure_traj.times = res.traj.times;
                rec.pressure_traj.p = std::move(res.traj.p);
            }
            report.records.push_back(std::move(rec));
        } catch (const std::exception& e) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6g", eps);
            throw std::runtime_error("convergence_lab.epsilon_sweep: run failed at eps=" +
                                     std::string(buf) + ": " + e.what());
        }
    }
    return report;
}

std::vector<NormFit> fit_norms(const SweepReport& report, const std::vector<std::string>& keys) {
    std::vector<NormFit> out;
    for (const auto& key : keys) {
        NormFit nf;
        nf.key = key;
        std::vector<double> eps, vals;
        for (const auto& rec : report.records) {
            auto it = rec.norms.find(key);
            if (it == rec.norms.end())
                throw std::invalid_argument("convergence_lab.fit_norms: report missing norm " +
                                            key);
            nf.points.emplace_back(rec.eps, it->second);
            eps.push_back(rec.eps);
            vals.push_back(it->second);
        }
        nf.strictly_decreasing = true;
        for (std::size_t i = 1; i < vals.size(); ++i)
            if (!(vals[i] < vals[i - 1])) nf.strictly_decreasing = false;
        bool positive = true;
        for (double v : vals) positive = positive && v > 0.0;
        if (positive && vals.size() >= 2) nf.fit = loglog_fit(eps, vals);
        out.push_back(std::move(nf));
    }
    return out;
}

DecayReport q_component_decay(const SweepReport& report, double p) {
    if (!(p >= 4.0 && p < 6.0))
        throw std::invalid_argument("convergence_lab.q_component_decay: p must lie in [4,6)");
    if (report.records.size() < 3)
        throw std::invalid_argument(
            "convergence_lab.q_component_decay: need at least 3 eps points");
    char key[32];
    std::snprintf(key, sizeof key, "Qu_L2t_L%gx", p);
    DecayReport d;
    d.p = p;
    d.paper_exponent = (6.0 - p) / (36.0 * p);
    d.fit = fit_norms(report, {key}).front();
    return d;
}

namespace {

template <typename FieldT>
double sample_diff_norm(const FieldT& a, const FieldT& b) {
    return norm_l2(subtract(a, b));
}

template <typename FieldT>
ModulusReport modulus_impl(const std::vector<FieldT>& samples, double dt_sample,
                           const std::vector<double>& h_list) {
    if (samples.size() < 3)
        throw std::invalid_argument("convergence_lab.time_modulus: need at least 3 samples");
    ModulusReport rep;
    std::vector<double> hs, ms;
    for (double h : h_list) {
        const double mreal = h / dt_sample;
        const long long m = std::llround(mreal);
        if (m < 1 || std::abs(mreal - static_cast<double>(m)) > 1e-9)
            throw std::invalid_argument(
                "convergence_lab.time_modulus: h must be a positive multiple of the stride");
        if (static_cast<std::size_t>(m) + 2 > samples.size())
            throw std::invalid_argument("convergence_lab.time_modulus: h too large for T");
        double acc = 0.0;
        const std::size_t last = samples.size() - 1 - static_cast<std::size_t>(m);
        for (std::size_t i = 0; i <= last; ++i) {
            double d = sample_diff_norm(samples[i + static_cast<std::size_t>(m)], samples[i]);
            double w = (i == 0 || i == last) ? 0.5 : 1.0;
            acc += w * d * d;
        }
        double mod = std::sqrt(acc * dt_sample);
        rep.rows.emplace_back(h, mod);
        if (mod > 0.0) {
            hs.push_back(h);
            ms.push_back(mod);
        }
    }
    if (hs.size() >= 2) rep.fit = loglog_fit(hs, ms);
    return rep;
}

}  // namespace

ModulusReport time_modulus(const std::vector<SpectralField>& samples, double dt_sample,
                           const std::vector<double>& h_list) {
    return modulus_impl(samples, dt_sample, h_list);
}

ModulusReport time_modulus(const std::vector<VectorField>& samples, double dt_sample,
                           const std::vector<double>& h_list) {
    return modulus_impl(samples, dt_sample, h_list);
}

WaveResidualReport pressure_wave_residual(const Trajectory& traj, double eps, double mu,
                                          bool include_nonlinear) {
    if (traj.p.size() != traj.times.size() || traj.u.size() != traj.times.size())
        throw std::invalid_argument(
            "convergence_lab.pressure_wave_residual: trajectory must store u and p");
    if (traj.times.size() < 3)
        throw std::invalid_argument(
            "convergence_lab.pressure_wave_residual: need at least 3 samples");
    const double dts = traj.dt_sample;
    if (dts > std::sqrt(eps) / 8.0 + 1e-12)
        throw std::invalid_argument(
            "convergence_lab.pressure_wave_residual: save stride too coarse for the acoustic "
            "scale (requires stride <= sqrt(eps)/8)");

    WaveResidualReport rep;
    double res2 = 0, ptt2 = 0, lapp2 = 0, lapdiv2 = 0, nonlin2 = 0;
    for (std::size_t i = 1; i + 1 < traj.times.size(); ++i) {
        SpectralField ptt = traj.p[i + 1];
        axpy(ptt, -2.0, traj.p[i]);
        axpy(ptt, 1.0, traj.p[i - 1]);
        scale(ptt, eps / (dts * dts));

        SpectralField lap_p = laplacian(traj.p[i]);
        SpectralField lap_divu = laplacian(divergence(traj.u[i]));
        scale(lap_divu, mu);
        SpectralField div_nonlin = include_nonlinear
                                       ? divergence(momentum_nonlinearity(traj.u[i]))
                                       : SpectralField(traj.grid);

        SpectralField res = ptt;
        axpy(res, -1.0, lap_p);
        axpy(res, 1.0, lap_divu);
        axpy(res, -1.0, div_nonlin);

        auto nrm2 = [](const SpectralField& f) {
            double n = norm_l2(f);
            return n * n;
        };
        res2 += nrm2(res);
        ptt2 += nrm2(ptt);
        lapp2 += nrm2(lap_p);
        lapdiv2 += nrm2(lap_divu);
        nonlin2 += nrm2(div_nonlin);
        ++rep.samples_used;
    }
    rep.residual_norm = std::sqrt(res2);
    rep.ptt_norm = std::sqrt(ptt2);
    rep.lap_p_norm = std::sqrt(lapp2);
    rep.lap_divu_norm = std::sqrt(lapdiv2);
    rep.div_nonlin_norm = std::sqrt(nonlin2);
    const double biggest = std::max({rep.ptt_norm, rep.lap_p_norm, rep.lap_divu_norm,
                                     rep.div_nonlin_norm});
    rep.relative_residual = biggest > 0.0 ? rep.residual_norm / biggest : 0.0;
    return rep;
}

namespace {

// Peak of the Hann-windowed discrete time spectrum with parabolic
// refinement; near-DC bins are excluded so the slow quasistatic drift
// does not mask the acoustic line.
double dominant_frequency(const std::vector<cplx>& series, double dt_sample) {
    const std::size_t n = series.size();
    if (n < 16)
        throw std::invalid_argument(
            "convergence_lab.initial_layer_probe: mode series too short for a spectrum");
    std::vector<cplx> buf(n);
    for (std::size_t i = 0; i < n; ++i) {
        double w = 0.5 * (1.0 - std::cos(two_pi * static_cast<double>(i) /
                                         static_cast<double>(n - 1)));
        buf[i] = cplx{series[i].real() * w, 0.0};
    }
    std::vector<cplx> hat(n);
    detail::fft_forward_normalized(1, static_cast<int>(n), buf.data(), hat.data());
    std::size_t lo = 2, hi = n / 2;  // skip DC and the first bin
    std::size_t best = lo;
    double best_mag = -1.0;
    for (std::size_t m = lo; m < hi; ++m) {
        double mag = std::abs(hat[m]);
        if (mag > best_mag) {
            best_mag = mag;
            best = m;
        }
    }
    double refined = static_cast<double>(best);
    if (best > lo && best + 1 < hi) {
        double l = std::log(std::abs(hat[best - 1]) + 1e-300);
        double c = std::log(std::abs(hat[best]) + 1e-300);
        double r = std::log(std::abs(hat[best + 1]) + 1e-300);
        double denom = l - 2.0 * c + r;
        if (denom < 0.0) refined += 0.5 * (l - r) / denom;
    }
    return two_pi * refined / (static_cast<double>(n) * dt_sample);
}

}  // namespace

LayerProbe initial_layer_probe(const SweepReport& report) {
    LayerProbe probe;
    probe.incompatible_family = true;
    std::vector<double> eps, freqs;
    for (const auto& rec : report.records) {
        if (rec.mode_series.empty())
            throw std::invalid_argument(
                "convergence_lab.initial_layer_probe: sweep did not track a pressure mode");
        LayerRow row;
        row.eps = rec.eps;
        row.dominant_frequency = dominant_frequency(rec.mode_series, report.dt_sample);
        row.sqrt_eps_p0 = rec.diagnostics.front().sqrt_eps_p_L2;
        // first halving of ||Qu|| below its running peak (the gradient
        // component starts at zero for solenoidal data, so the drop is
        // measured against the layer's own excitation)
        row.qu_half_time = rec.diagnostics.back().t;
        double peak = 0.0;
        for (const auto& d : rec.diagnostics) {
            if (peak > 0.0 && d.Qu_L2 <= 0.5 * peak) {
                row.qu_half_time = d.t;
                break;
            }
            peak = std::max(peak, d.Qu_L2);
        }
        if (rec.diagnostics.front().sqrt_eps_p_L2 == 0.0) probe.incompatible_family = false;
        probe.rows.push_back(row);
        eps.push_back(rec.eps);
        freqs.push_back(row.dominant_frequency);
    }
    if (eps.size() >= 2) probe.freq_fit = loglog_fit(eps, freqs);
    return probe;
}

StrichartzReport strichartz_scaling_report(const SweepReport& report) {
    StrichartzReport rep;
    rep.caveat =
        "periodic-torus surrogate: the weighted norms are reported without asserting the "
        "whole-space dispersive bounds or their constants";
    for (const auto& rec : report.records) {
        for (const char* k : {"p_L4t_Wm24", "dtp_L4t_Wm34", "p0_L2", "divu0_Hm1", "divu_L2tx",
                              "nonlin_L1t_L32x"}) {
            if (rec.norms.find(k) == rec.norms.end())
                throw std::invalid_argument(
                    std::string("convergence_lab.strichartz_scaling_report: missing norm ") + k);
        }
        StrichartzRow row;
        row.eps = rec.eps;
        row.weighted_p = std::pow(rec.eps, 3.0 / 8.0) * rec.norms.at("p_L4t_Wm24");
        row.weighted_dtp = std::pow(rec.eps, 7.0 / 8.0) * rec.norms.at("dtp_L4t_Wm34");
        row.rhs_proxy = std::sqrt(rec.eps) * rec.norms.at("p0_L2") + rec.norms.at("divu0_Hm1") +
                        std::sqrt(report.T) * rec.norms.at("divu_L2tx") +
                        rec.norms.at("nonlin_L1t_L32x");
        rep.rows.push_back(row);
    }
    return rep;
}

LimitCheckRow pressure_limit_check(const Trajectory& ac_pressure, const Trajectory& ref_velocity,
                                   double eps, double window_factor) {
    if (ac_pressure.p.size() != ac_pressure.times.size())
        throw std::invalid_argument(
            "convergence_lab.pressure_limit_check: AC trajectory must store pressure");
    if (ref_velocity.u.size() != ref_velocity.times.size())
        throw std::invalid_argument(
            "convergence_lab.pressure_limit_check: reference trajectory must store velocity");
    if (ac_pressure.times.size() != ref_velocity.times.size() ||
        !ac_pressure.grid.same_as(ref_velocity.grid) ||
        std::abs(ac_pressure.dt_sample - ref_velocity.dt_sample) > 1e-12)
        throw std::invalid_argument(
            "convergence_lab.pressure_limit_check: trajectories must share grid and samples");

    const double dts = ac_pressure.dt_sample;
    const std::size_t nsamp = ac_pressure.times.size();
    const double span = ac_pressure.times.back() - ac_pressure.times.front();

    LimitCheckRow out;
    out.eps = eps;
    double w = window_factor * std::sqrt(eps);
    if (eps >= 1.0 || w > span / 4.0) {
        w = std::min(w, span / 4.0);
        out.out_of_asymptotic_range = true;
    }
    out.window = w;

    // limit pressure from the reference velocity, cached per sample
    std::vector<SpectralField> p_ref(nsamp);
    std::vector<bool> have(nsamp, false);
    auto ref_at = [&](std::size_t i) -> const SpectralField& {
        if (!have[i]) {
            p_ref[i] = recover_pressure(ref_velocity.u[i]);
            have[i] = true;
        }
        return p_ref[i];
    };

    auto windowed_rel = [&](double width) -> double {
        const long long mh = static_cast<long long>(std::floor(0.5 * width / dts + 1e-9));
        if (mh < 2)
            throw std::invalid_argument(
                "convergence_lab.pressure_limit_check: window outside the scale-separation "
                "band (width under-resolved by the save stride)");
        if (2 * static_cast<std::size_t>(mh) + 2 > nsamp) return std::nan("");
        std::vector<double> wgt(static_cast<std::size_t>(2 * mh + 1));
        double tot = 0.0;
        for (long long j = -mh; j <= mh; ++j) {
            double x = static_cast<double>(j) / (2.0 * static_cast<double>(mh));  // [-1/2, 1/2]
            double b = 0.42 + 0.5 * std::cos(two_pi * x) + 0.08 * std::cos(2.0 * two_pi * x);
            wgt[static_cast<std::size_t>(j + mh)] = b;
            tot += b;
        }
        for (double& b : wgt) b /= tot;

        double diff2 = 0.0, ref2 = 0.0;
        for (std::size_t i = static_cast<std::size_t>(mh); i + static_cast<std::size_t>(mh) < nsamp;
             ++i) {
            SpectralField avg(ac_pressure.grid);
            for (long long j = -mh; j <= mh; ++j)
                axpy(avg, wgt[static_cast<std::size_t>(j + mh)],
                     ac_pressure.p[i + static_cast<std::size_t>(j)]);
            const SpectralField& pr = ref_at(i);
            double d = norm_l2(subtract(avg, pr));
            double r = norm_l2(pr);
            diff2 += d * d;
            ref2 += r * r;
        }
        return ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2);
    };

    out.rel_diff = windowed_rel(w);
    out.rel_diff_2w = windowed_rel(2.0 * w);
    return out;
}

}  // namespace acnsf
