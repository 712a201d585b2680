#include "acnsf/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acnsf/checkpoint.hpp"
#include "acnsf/config.hpp"
#include "acnsf/emit.hpp"
#include "acnsf/initial_data.hpp"
#include "acnsf/mollifier.hpp"
#include "acnsf/norms.hpp"
#include "acnsf/operators.hpp"
#include "acnsf/projectors.hpp"
#include "acnsf/random_fields.hpp"

namespace acnsf {

namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("experiment_cli.dispatch: cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("experiment_cli.dispatch: cannot write " + path.string());
    out << text;
}

RunOptions options_from(const ParsedConfig& pc) {
    RunOptions ro;
    ro.track_mode = pc.track_mode;
    ro.store_pressure = pc.record_pressure;
    return ro;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& checkpoint_out, const std::string& restart) {
    ParsedConfig pc = parse_config(slurp(config_path));
    if (pc.is_sweep)
        throw ConfigError("experiment_cli.dispatch: run expects a run config (no [sweep])");
    fs::create_directories(out_dir);

    RunResult res;
    if (!restart.empty()) {
        if (!fs::exists(restart))
            throw ConfigError("experiment_cli.dispatch: restart checkpoint not found: " +
                              restart);
        ACState st = read_checkpoint(restart, &pc.run.grid);
        RunConfig rc = pc.run;
        rc.T = pc.run.T - st.t;
        if (!(rc.T > 0.0))
            throw ConfigError("experiment_cli.dispatch: checkpoint already at or past T");
        res = run_from_state(st, rc, options_from(pc));
    } else {
        res = run(pc.run, options_from(pc));
    }

    write_file(fs::path(out_dir) / "diagnostics.csv", diagnostics_csv(res.diagnostics));
    if (res.degenerate_eps)
        std::fprintf(stderr, "note: degenerate eps >= 1 run (flagged)\n");
    if (!checkpoint_out.empty()) write_checkpoint(res.final_state, checkpoint_out);
    std::printf("run: %d steps, dt=%.6g, %zu samples -> %s/diagnostics.csv\n", res.steps,
                res.dt_used, res.diagnostics.size(), out_dir.c_str());
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
    ParsedConfig pc = parse_config(slurp(config_path));
    if (!pc.is_sweep)
        throw ConfigError("experiment_cli.dispatch: sweep expects a [sweep] section");
    fs::create_directories(out_dir);

    SweepReport rep = epsilon_sweep(pc.sweep_config());
    write_file(fs::path(out_dir) / "sweep.ndjson", sweep_ndjson(rep));
    std::vector<std::string> fit_keys;
    for (const char* k : {"Qu_L2t_L4x", "Pu_err_L2tx", "theta_err_L2tx"})
        if (std::find(rep.norm_keys.begin(), rep.norm_keys.end(), k) != rep.norm_keys.end())
            fit_keys.push_back(k);
    if (!fit_keys.empty())
        write_file(fs::path(out_dir) / "fits.csv", fits_csv(fit_norms(rep, fit_keys)));
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "diagnostics_eps%zu.csv", i);
        write_file(fs::path(out_dir) / name, diagnostics_csv(rep.records[i].diagnostics));
    }
    if (pc.track_mode) {
        LayerProbe probe = initial_layer_probe(rep);
        write_file(fs::path(out_dir) / "layer_probe.csv", layer_probe_csv(probe));
    }
    bool have_strichartz = true;
    for (const char* k : {"p_L4t_Wm24", "dtp_L4t_Wm34", "p0_L2", "divu0_Hm1", "divu_L2tx",
                          "nonlin_L1t_L32x"})
        have_strichartz = have_strichartz &&
                          std::find(rep.norm_keys.begin(), rep.norm_keys.end(), k) !=
                              rep.norm_keys.end();
    if (have_strichartz)
        write_file(fs::path(out_dir) / "strichartz.csv",
                   strichartz_csv(strichartz_scaling_report(rep)));
    std::printf("sweep: %zu eps values -> %s/sweep.ndjson\n", rep.records.size(),
                out_dir.c_str());
    return 0;
}

int cmd_check_projectors(int dim, int n, std::uint64_t seed, int count) {
    GridSpec g = make_grid(dim, n);
    const double tol = 1e-11;
    double worst_idem = 0, worst_cross = 0, worst_sum = 0, worst_div = 0, worst_orth = 0;
    for (int c = 0; c < count; ++c) {
        VectorField v(g);
        for (int a = 0; a < dim; ++a)
            v[a] = random_scalar_field(g, seed + 17u * static_cast<std::uint64_t>(c) +
                                              static_cast<std::uint64_t>(a),
                                       smooth_spectrum(g), std::max(2, n / 3 - 1));
        const double vn = norm_l2(v);
        HodgePair h = hodge_decompose(v);
        VectorField pp = project_P(h.solenoidal);
        VectorField pq = project_P(h.gradient);
        VectorField sum = h.solenoidal;
        axpy(sum, 1.0, h.gradient);
        worst_idem = std::max(worst_idem, norm_l2(subtract(pp, h.solenoidal)) / vn);
        worst_cross = std::max(worst_cross, norm_l2(pq) / vn);
        worst_sum = std::max(worst_sum, norm_l2(subtract(sum, v)) / vn);
        worst_div = std::max(worst_div, norm_l2(divergence(h.solenoidal)) / vn);
        const double orth =
            std::abs(norm_l2(v) * norm_l2(v) -
                     (norm_l2(h.solenoidal) * norm_l2(h.solenoidal) +
                      norm_l2(h.gradient) * norm_l2(h.gradient))) /
            (vn * vn);
        worst_orth = std::max(worst_orth, orth);
    }
    struct Row {
        const char* name;
        double value;
    } rows[] = {{"P^2 = P", worst_idem},
                {"P Q = 0", worst_cross},
                {"P + Q = I", worst_sum},
                {"div P = 0", worst_div},
                {"L2 orthogonality", worst_orth}};
    bool ok = true;
    std::printf("%-20s %-14s tol=%g\n", "property", "max_rel", tol);
    for (const Row& r : rows) {
        bool pass = r.value <= tol;
        ok = ok && pass;
        std::printf("%-20s %-14.3e %s\n", r.name, r.value, pass ? "pass" : "FAIL");
    }
    return ok ? 0 : 1;
}

int cmd_mollifier_test(int dim, int n, double length, const std::string& out_dir,
                       std::uint64_t seed) {
    GridSpec g = make_grid(dim, n, length);
    fs::create_directories(out_dir);
    // a genuinely-H1 field: power-law spectrum |k|^{-(d/2+1+0.01)}
    SpectralField f = random_scalar_field_unit(g, seed, power_law_spectrum(0.5 * dim + 1.01),
                                               n / 2 - 1);
    std::vector<double> alphas;
    for (int e = 2; e <= 6; ++e) {
        double a = std::pow(2.0, -e);
        if (a >= 4.0 * g.spacing() && a <= 0.25 * g.length) alphas.push_back(a);
    }
    if (alphas.size() < 2)
        throw ConfigError("experiment_cli.dispatch: grid too coarse for the mollifier alphas");
    bool ok = true;
    for (double p : (dim == 3 ? std::vector<double>{2, 4, 6} : std::vector<double>{2, 4})) {
        RatioTable t = check_friedrichs_y1(f, alphas, p);
        char name[64];
        std::snprintf(name, sizeof name, "y1_p%g.csv", p);
        write_file(fs::path(out_dir) / name, ratio_table_csv(t));
        for (const RatioRow& r : t.rows) ok = ok && std::isfinite(r.ratio);
        std::printf("y1 p=%g: max ratio %.4g, numerator slope %.4f\n", p, t.max_ratio,
                    t.numerator_slope);
    }
    RatioTable t2 = check_friedrichs_y2(f, alphas, 1.0, 2.0, 2.0);
    write_file(fs::path(out_dir) / "y2_s1_q2_p2.csv", ratio_table_csv(t2));
    for (const RatioRow& r : t2.rows) ok = ok && std::isfinite(r.ratio);
    std::printf("y2 s=1 q=2 p=2: max ratio %.4g\n", t2.max_ratio);
    std::printf("mollifier-test: all ratio tables finite: %s\n", ok ? "pass" : "FAIL");
    return ok ? 0 : 1;
}

int cmd_wave_residual(const std::string& config_path, const std::string& out_dir) {
    ParsedConfig pc = parse_config(slurp(config_path));
    fs::create_directories(out_dir);
    RunOptions ro;
    ro.store_velocity = true;
    ro.store_pressure = true;
    RunResult res = run(pc.run, ro);
    WaveResidualReport rep = pressure_wave_residual(res.traj, pc.run.eps, pc.run.mu,
                                                    /*include_nonlinear=*/pc.run.nonlinear);
    write_file(fs::path(out_dir) / "wave_residual.json", wave_residual_json(rep));
    std::printf("wave residual: relative %.4g over %d samples\n", rep.relative_residual,
                rep.samples_used);
    return 0;
}

int cmd_compare(const std::string& config_path, const std::string& out_dir) {
    ParsedConfig pc = parse_config(slurp(config_path));
    fs::create_directories(out_dir);
    SweepConfig sc = pc.sweep_config();
    if (!pc.is_sweep) sc.eps_list = {pc.run.eps};
    sc.record_pressure = true;
    SweepReport rep = epsilon_sweep(sc);
    std::vector<LimitCheckRow> rows;
    for (const EpsRecord& rec : rep.records)
        rows.push_back(pressure_limit_check(rec.pressure_traj, rep.reference.traj, rec.eps,
                                            pc.window_factor));
    write_file(fs::path(out_dir) / "limit_check.csv", limit_check_csv(rows));
    write_file(fs::path(out_dir) / "sweep.ndjson", sweep_ndjson(rep));
    std::printf("compare: %zu eps values -> %s/limit_check.csv\n", rows.size(), out_dir.c_str());
    return 0;
}

}  // namespace

int dispatch(int argc, char** argv) {
    CLI::App app{"artificial compressibility laboratory for the Navier-Stokes-Fourier system"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", checkpoint_out, restart;
    int dim = 3, n = 32, count = 50;
    double length = two_pi;
    std::uint64_t seed = 0;

    CLI::App* c_run = app.add_subcommand("run", "integrate one AC run");
    c_run->add_option("--config", config_path)->required();
    c_run->add_option("--out", out_dir);
    c_run->add_option("--checkpoint-out", checkpoint_out);
    c_run->add_option("--restart", restart);

    CLI::App* c_sweep = app.add_subcommand("sweep", "epsilon sweep with reference run");
    c_sweep->add_option("--config", config_path)->required();
    c_sweep->add_option("--out", out_dir);

    CLI::App* c_proj = app.add_subcommand("check-projectors", "Leray projector property table");
    c_proj->add_option("--dim", dim);
    c_proj->add_option("--n", n);
    c_proj->add_option("--seed", seed);
    c_proj->add_option("--count", count);

    CLI::App* c_moll = app.add_subcommand("mollifier-test", "Friedrichs lemma ratio tables");
    c_moll->add_option("--dim", dim);
    c_moll->add_option("--n", n)->required();
    c_moll->add_option("--length", length);
    c_moll->add_option("--out", out_dir);
    c_moll->add_option("--seed", seed);

    CLI::App* c_wave = app.add_subcommand("wave-residual", "rescaled pressure wave residual");
    c_wave->add_option("--config", config_path)->required();
    c_wave->add_option("--out", out_dir);

    CLI::App* c_cmp = app.add_subcommand("compare", "AC vs reference + limit pressure check");
    c_cmp->add_option("--config", config_path)->required();
    c_cmp->add_option("--out", out_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_run->parsed()) return cmd_run(config_path, out_dir, checkpoint_out, restart);
        if (c_sweep->parsed()) return cmd_sweep(config_path, out_dir);
        if (c_proj->parsed()) return cmd_check_projectors(dim, n, seed, count);
        if (c_moll->parsed()) return cmd_mollifier_test(dim, n, length, out_dir, seed);
        if (c_wave->parsed()) return cmd_wave_residual(config_path, out_dir);
        if (c_cmp->parsed()) return cmd_compare(config_path, out_dir);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 1;
    }
    return 2;
}

}  // namespace acnsf
