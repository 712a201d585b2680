#include "acnsf/emit.hpp"

#include <cstdio>

#include "json.hpp"

namespace acnsf {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records) {
    std::string out =
        "t,E,D,balance_residual,div_u_L2,Qu_L2,Qu_L4,sqrt_eps_p_L2,u_L2,theta_L2\n";
    for (const DiagnosticsRecord& r : records) {
        out += format_double(r.t) + ',' + format_double(r.E) + ',' + format_double(r.D) + ',' +
               format_double(r.balance_residual) + ',' + format_double(r.div_u_L2) + ',' +
               format_double(r.Qu_L2) + ',' + format_double(r.Qu_L4) + ',' +
               format_double(r.sqrt_eps_p_L2) + ',' + format_double(r.u_L2) + ',' +
               format_double(r.theta_L2) + '\n';
    }
    return out;
}

std::string sweep_ndjson(const SweepReport& report) {
    std::string out;
    for (const EpsRecord& rec : report.records) {
        nlohmann::json j;
        j["eps"] = rec.eps;
        j["degenerate_eps"] = rec.degenerate_eps;
        j["max_balance_residual"] = rec.max_balance_residual;
        nlohmann::json norms = nlohmann::json::object();
        for (const auto& [k, v] : rec.norms) norms[k] = v;
        j["norms"] = norms;
        j["samples"] = rec.diagnostics.size();
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string fits_csv(const std::vector<NormFit>& fits) {
    std::string out = "key,slope,stderr,ci95,strictly_decreasing,eps,value\n";
    for (const NormFit& f : fits) {
        for (const auto& [eps, value] : f.points) {
            out += f.key + ',' + format_double(f.fit.slope) + ',' +
                   format_double(f.fit.stderr_slope) + ',' + format_double(f.fit.ci95) + ',' +
                   (f.strictly_decreasing ? "1" : "0") + ',' + format_double(eps) + ',' +
                   format_double(value) + '\n';
        }
    }
    return out;
}

std::string layer_probe_csv(const LayerProbe& probe) {
    std::string out = "eps,dominant_frequency,sqrt_eps_p0,qu_half_time\n";
    for (const LayerRow& r : probe.rows) {
        out += format_double(r.eps) + ',' + format_double(r.dominant_frequency) + ',' +
               format_double(r.sqrt_eps_p0) + ',' + format_double(r.qu_half_time) + '\n';
    }
    out += "# freq_fit_slope," + format_double(probe.freq_fit.slope) + ",ci95," +
           format_double(probe.freq_fit.ci95) + '\n';
    if (!probe.incompatible_family)
        out += "# warning: compatible data family (no layer to probe)\n";
    return out;
}

std::string strichartz_csv(const StrichartzReport& rep) {
    std::string out = "# " + rep.caveat + '\n';
    out += "eps,weighted_p_L4t_Wm24,weighted_dtp_L4t_Wm34,rhs_proxy\n";
    for (const StrichartzRow& r : rep.rows) {
        out += format_double(r.eps) + ',' + format_double(r.weighted_p) + ',' +
               format_double(r.weighted_dtp) + ',' + format_double(r.rhs_proxy) + '\n';
    }
    return out;
}

std::string wave_residual_json(const WaveResidualReport& rep) {
    nlohmann::json j;
    j["relative_residual"] = rep.relative_residual;
    j["residual_norm"] = rep.residual_norm;
    j["ptt_norm"] = rep.ptt_norm;
    j["lap_p_norm"] = rep.lap_p_norm;
    j["lap_divu_norm"] = rep.lap_divu_norm;
    j["div_nonlin_norm"] = rep.div_nonlin_norm;
    j["samples_used"] = rep.samples_used;
    return j.dump(2);
}

std::string limit_check_csv(const std::vector<LimitCheckRow>& rows) {
    std::string out = "eps,window,rel_diff,rel_diff_2w,out_of_asymptotic_range\n";
    for (const LimitCheckRow& r : rows) {
        out += format_double(r.eps) + ',' + format_double(r.window) + ',' +
               format_double(r.rel_diff) + ',' + format_double(r.rel_diff_2w) + ',' +
               (r.out_of_asymptotic_range ? "1" : "0") + '\n';
    }
    return out;
}

}  // namespace acnsf
