#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "acnsf/spectral_field.hpp"

namespace acnsf {

/// State advanced by the artificial compressibility system: velocity,
/// temperature, mean-zero pressure, relaxation parameter and transport
/// coefficients.
struct ACState {
    VectorField u;
    SpectralField theta;
    SpectralField p;
    double eps = 1e-2;
    double mu = 1.0;
    double kappa = 1.0;
    double t = 0.0;

    const GridSpec& grid() const { return theta.grid; }
};

/// Exact one-step update of the linear acoustic-diffusive part for a
/// single Fourier mode: transverse velocity components contract by the
/// heat factor; the pair (s, p_hat) with s = i k . u_hat evolves by the
/// exact exponential of [[-mu |k|^2, |k|^2], [-1/eps, 0]].
struct ModePropagator {
    double transverse = 1.0;  // exp(-mu |k|^2 dt)
    double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
};

/// ksq = |k|^2 (ksq = 0 returns the identity on p_hat and factor 1 on u_hat).
ModePropagator linear_mode_propagator(double ksq, double eps, double mu, double dt);

/// Variant with distinct diffusion and coupling wavenumbers; the solver
/// uses it so that Nyquist-tainted modes stay diffused while the
/// divergence coupling honours the real-field derivative convention.
ModePropagator linear_mode_propagator_split(double ksq_diffusion, double ksq_coupling,
                                            double eps, double mu, double dt);

struct Tendency {
    VectorField du;
    SpectralField dtheta;
};

/// Dealiased skew-symmetric tendencies
///   du     = -(u . grad) u - (1/2)(div u) u
///   dtheta = -u . grad theta - (1/2)(div u) theta
/// (no pressure or diffusion terms; those live in the propagator).
Tendency nonlinear_rhs(const ACState& state);

/// (u . grad) u + (1/2)(div u) u, dealiased (the momentum nonlinearity
/// appearing in the pressure wave equation's source).
VectorField momentum_nonlinearity(const VectorField& u);

/// E(t) = integral of |u|^2/2 + |theta|^2/2 + eps |p|^2 / 2.
double energy(const ACState& state);

/// Largest dt admitted by the advective CFL bound (eps-independent).
double advective_dt_limit(const ACState& state);

/// Strang step: half linear propagator, explicit midpoint on the
/// nonlinear tendencies, half linear propagator.  Throws on CFL
/// violation, naming the admissible dt.  When dissipation is non-null it
/// accrues the exact energy drop of the linear substeps (the discrete
/// realization of the dissipation integral).
ACState step(const ACState& state, double dt, double* dissipation = nullptr,
             bool nonlinear = true);

enum class DataFamily { TaylorGreen, Random, Incompatible, Acoustic, HeatDecay };
enum class P0Mode { FamilyDefault, Zero, Compatible };

struct RunConfig {
    GridSpec grid;
    double eps = 1e-2;
    double mu = 1.0;
    double kappa = 1.0;
    double T = 1.0;
    double dt = 0.0;   // when 0, derived from cfl and the initial data
    double cfl = 0.0;
    int save_stride = 1;  // steps between saved samples
    DataFamily family = DataFamily::TaylorGreen;
    std::uint64_t seed = 0;
    bool nonlinear = true;
    P0Mode p0_mode = P0Mode::FamilyDefault;
};

/// Per-sample scalar diagnostics (the CSV row of the run output).
struct DiagnosticsRecord {
    double t = 0.0;
    double E = 0.0;
    double D = 0.0;
    double balance_residual = 0.0;  // |E(t) + D(t) - E(0)|
    double div_u_L2 = 0.0;
    double Qu_L2 = 0.0;
    double Qu_L4 = 0.0;
    double sqrt_eps_p_L2 = 0.0;
    double u_L2 = 0.0;
    double theta_L2 = 0.0;
};

/// Uniformly sampled fields of a run; which fields are stored is chosen
/// per run (velocity / temperature / pressure independently).
struct Trajectory {
    GridSpec grid;
    double dt_sample = 0.0;
    std::vector<double> times;
    std::vector<VectorField> u;
    std::vector<SpectralField> theta;
    std::vector<SpectralField> p;
};

struct RunOptions {
    bool store_velocity = false;
    bool store_theta = false;
    bool store_pressure = false;
    std::optional<std::array<int, 3>> track_mode;  // integer mode of p to record
    bool record_nonlinear_l32 = false;  // per-save L^{3/2} norm of the momentum nonlinearity
};

struct RunResult {
    ACState final_state;
    std::vector<DiagnosticsRecord> diagnostics;
    Trajectory traj;
    std::vector<cplx> mode_series;
    std::vector<double> nonlinear_l32;
    double dt_used = 0.0;
    int steps = 0;
    bool degenerate_eps = false;  // eps >= 1 runs are allowed but flagged
};

/// Integrates to T, recording diagnostics every save stride.  Aborts with
/// the offending time on NaN/overflow.
RunResult run(const RunConfig& config, const RunOptions& options = {});

/// Continuation of a run from an existing state (used for checkpoint
/// restarts); T counts from state.t.
RunResult run_from_state(const ACState& initial, const RunConfig& config,
                         const RunOptions& options = {});

}  // namespace acnsf
