#pragma once

#include <map>
#include <string>

#include "acnsf/ac_solver.hpp"
#include "acnsf/fitting.hpp"
#include "acnsf/reference.hpp"

namespace acnsf {

// Norm keys a sweep can record:
//   Qu_L2t_L4x, Qu_L2t_L2x     gradient-component decay norms
//   Pu_err_L2tx, theta_err_L2tx  AC-vs-reference errors
//   p_L4t_Wm24, dtp_L4t_Wm34   weighted pressure norms (dtp by central differences)
//   sqrt_eps_p_LinfL2, divu_L2tx, nonlin_L1t_L32x, divu0_Hm1, p0_L2
std::vector<std::string> all_sweep_norms();

struct SweepConfig {
    RunConfig base;                  // eps field is overwritten per entry
    std::vector<double> eps_list;    // strictly decreasing, all > 0
    bool with_reference = true;
    std::vector<std::string> norms;  // empty selects all_sweep_norms()
    bool record_pressure = false;    // keep per-sample pressure fields
    std::optional<std::array<int, 3>> track_mode;
    double window_factor = 8.0;      // pressure_limit_check averaging width / sqrt(eps)
};

struct EpsRecord {
    double eps = 0.0;
    std::map<std::string, double> norms;
    double max_balance_residual = 0.0;
    bool degenerate_eps = false;
    std::vector<DiagnosticsRecord> diagnostics;
    std::vector<cplx> mode_series;
    Trajectory pressure_traj;  // populated when record_pressure
};

struct SweepReport {
    std::vector<double> eps_list;
    std::vector<std::string> norm_keys;
    std::vector<EpsRecord> records;
    RefRunResult reference;  // trajectory stores u and theta
    double dt_sample = 0.0;
    double T = 0.0;
    double window_factor = 8.0;
    bool has_reference = false;
    std::uint64_t seed = 0;
};

/// Runs the AC solver once per eps plus one reference run from the same
/// initial data; assembles the per-eps records.  Run failures propagate
/// with the offending eps named.
SweepReport epsilon_sweep(const SweepConfig& cfg);

struct NormFit {
    std::string key;
    FitResult fit;  // slope of log(value) vs log(eps): positive = decays with eps
    std::vector<std::pair<double, double>> points;  // raw (eps, value)
    bool strictly_decreasing = false;               // in the decreasing-eps order
};

/// Log-log order fits for the requested recorded norms.
std::vector<NormFit> fit_norms(const SweepReport& report, const std::vector<std::string>& keys);

struct DecayReport {
    NormFit fit;
    double paper_exponent = 0.0;  // (6-p)/(36 p), the non-binding reference rate
    double p = 4.0;
};

/// Fit of ||Q u^eps||_{L^2_t L^p_x} vs eps with the paper's reference
/// exponent attached.  Requires p in [4,6) and at least 3 eps points.
DecayReport q_component_decay(const SweepReport& report, double p = 4.0);

struct ModulusReport {
    std::vector<std::pair<double, double>> rows;  // (h, modulus)
    FitResult fit;                                // log modulus vs log h
};

/// Discrete L^2_{t,x} shift modulus ( integral over [0, T-h] ) for each h;
/// every h must be a positive multiple of the sample stride.
ModulusReport time_modulus(const std::vector<SpectralField>& samples, double dt_sample,
                           const std::vector<double>& h_list);
ModulusReport time_modulus(const std::vector<VectorField>& samples, double dt_sample,
                           const std::vector<double>& h_list);

struct WaveResidualReport {
    double relative_residual = 0.0;  // ||residual|| / max single-term norm
    double residual_norm = 0.0;
    double ptt_norm = 0.0;        // d_tautau p-tilde
    double lap_p_norm = 0.0;      // Delta p-tilde
    double lap_divu_norm = 0.0;   // mu Delta div u-tilde   (F1 source)
    double div_nonlin_norm = 0.0; // div((u.grad)u + (div u)u/2)  (F2 source)
    int samples_used = 0;
};

/// Residual of the rescaled pressure wave equation
///   d_tautau p~ - Delta p~ + mu Delta div u~ - div((u~.grad)u~ + (div u~)u~/2) = 0
/// with tau = t/sqrt(eps); the second tau-derivative uses second-order
/// central differences on the saved samples.  The trajectory must store
/// u and p and be sampled at stride <= sqrt(eps)/8.  Pass
/// include_nonlinear = false for trajectories of the linear system (the
/// manufactured acoustic checks), where the source is mu Delta div u~ alone.
WaveResidualReport pressure_wave_residual(const Trajectory& traj, double eps, double mu,
                                          bool include_nonlinear = true);

struct LayerRow {
    double eps = 0.0;
    double dominant_frequency = 0.0;  // peak of the tracked mode's time spectrum
    double sqrt_eps_p0 = 0.0;
    double qu_half_time = 0.0;  // first t with ||Qu|| below half its initial value
};

struct LayerProbe {
    bool incompatible_family = true;  // false raises the "no layer to probe" warning
    std::vector<LayerRow> rows;
    FitResult freq_fit;  // slope of log(frequency) vs log(eps); acoustic scale = -1/2
};

LayerProbe initial_layer_probe(const SweepReport& report);

struct StrichartzRow {
    double eps = 0.0;
    double weighted_p = 0.0;    // eps^{3/8} ||p||_{L4_t W^{-2,4}}
    double weighted_dtp = 0.0;  // eps^{7/8} ||dt p||_{L4_t W^{-3,4}}
    double rhs_proxy = 0.0;     // sqrt(eps)||p0|| + ||div u0||_{H^-1}
                                //   + sqrt(T)||div u|| + ||nonlinear||_{L1_t L^{3/2}}
};

struct StrichartzReport {
    std::string caveat;  // periodic-torus disclaimer carried into every emission
    std::vector<StrichartzRow> rows;
};

StrichartzReport strichartz_scaling_report(const SweepReport& report);

struct LimitCheckRow {
    double eps = 0.0;
    double window = 0.0;        // averaging width actually used
    double rel_diff = 0.0;      // window-averaged p vs recover_pressure(u_ref)
    double rel_diff_2w = 0.0;   // sensitivity: doubled window (NaN when it no longer fits)
    bool out_of_asymptotic_range = false;
};

/// Compares the time-mollified AC pressure against the limit pressure of
/// the reference velocity in L^2_{t,x}.  Window width = window_factor *
/// sqrt(eps) (clamped into the run when eps is out of range, with the row
/// flagged).  Throws when the stride cannot resolve the window.
LimitCheckRow pressure_limit_check(const Trajectory& ac_pressure, const Trajectory& ref_velocity,
                                   double eps, double window_factor = 8.0);

}  // namespace acnsf
