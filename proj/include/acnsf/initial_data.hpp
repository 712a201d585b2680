#pragma once

#include "acnsf/ac_solver.hpp"

namespace acnsf {

// Initial-data families.  All velocities are divergence-free and the
// pressure is mean-zero, so the finite-energy requirements on the data
// hold with sqrt(eps) p0 -> 0 automatic for the O(1)-pressure family.
//
//   TaylorGreen : u = (cos x sin y, -sin x cos y)[ * cos z in 3d],
//                 theta = periodic Gaussian blob, p0 = 0
//   Random      : random solenoidal velocity + random theta (unit L2,
//                 smooth spectrum), p0 = 0
//   Incompatible: Random plus an O(1) random mean-zero p0
//   Acoustic    : p0 = sin x1, u = 0, theta = 0 (linear wave tests)
//   HeatDecay   : u = (sin x2, 0[, 0]), theta = 0, p0 = 0

VectorField taylor_green_velocity(const GridSpec& grid);
SpectralField gaussian_blob(const GridSpec& grid, double width_fraction = 0.1);
VectorField heat_decay_velocity(const GridSpec& grid);

ACState make_initial_state(const GridSpec& grid, DataFamily family, std::uint64_t seed,
                           double eps, double mu, double kappa,
                           P0Mode p0_mode = P0Mode::FamilyDefault);

}  // namespace acnsf
