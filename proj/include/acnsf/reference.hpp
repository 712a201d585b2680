#pragma once

#include "acnsf/ac_solver.hpp"

namespace acnsf {

/// State of the incompressible limit system: divergence-free velocity and
/// advected-diffused temperature.
struct RefState {
    VectorField u;
    SpectralField theta;
    double mu = 1.0;
    double kappa = 1.0;
    double t = 0.0;

    const GridSpec& grid() const { return theta.grid; }
};

/// Projection of an AC state onto reference initial data: u -> P u.
RefState make_ref_state(const ACState& ac);

double ref_advective_dt_limit(const RefState& state);

/// Strang step with exact diffusion factors and explicit midpoint on the
/// Leray-projected advection; re-projection keeps div u = 0 each substep.
/// The optional accumulator receives the exact linear-substep dissipation.
RefState ref_step(const RefState& state, double dt, double* dissipation = nullptr);

struct RefRunResult {
    RefState final_state;
    std::vector<DiagnosticsRecord> diagnostics;
    Trajectory traj;
};

/// Integrates the reference system from the given initial state using the
/// grid/time parameters of the config (its eps/family fields are ignored).
RefRunResult ref_run(const RefState& initial, const RunConfig& config,
                     const RunOptions& options = {});

/// Limit pressure of a divergence-free velocity: the mean-zero p with
/// grad p = -Q[(u.grad)u], i.e. p = -laplacian^{-1} div((u.grad)u).
/// Throws when u is not divergence-free.
SpectralField recover_pressure(const VectorField& u);

/// laplacian^{-1} tr((Du)^2); equals -recover_pressure(u) for
/// divergence-free u (the identity is checked numerically in tests).
SpectralField pressure_from_velocity_gradient_trace(const VectorField& u);

/// Space-time test field: a divergence-free spatial profile (and a scalar
/// profile for the temperature form) times a smooth bump in time that is
/// compactly supported inside (0, T).
struct WeakTestField {
    VectorField phi;
    SpectralField phi_scalar;
    double t_center = 0.5;
    double t_halfwidth = 0.35;

    double bump(double t) const;
    double bump_dt(double t) const;
};

WeakTestField make_weak_test_field(const GridSpec& grid, std::uint64_t seed, double t_center,
                                   double t_halfwidth);

struct WeakResidualRow {
    double velocity_residual = 0.0;
    double velocity_normalized = 0.0;
    double theta_residual = 0.0;
    double theta_normalized = 0.0;
};

/// Evaluates both weak-form residuals (velocity and temperature) by
/// space-time quadrature (composite Simpson in time).  The trajectory
/// must store velocity and temperature fields.  Throws when a velocity
/// test field is not divergence-free.
std::vector<WeakResidualRow> weak_residual(const Trajectory& traj,
                                           const std::vector<WeakTestField>& tests,
                                           double mu, double kappa);

}  // namespace acnsf
