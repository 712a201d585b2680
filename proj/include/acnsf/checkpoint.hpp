#pragma once

#include <string>

#include "acnsf/ac_solver.hpp"

namespace acnsf {

// Binary state persistence, format "ACNSF1":
//   magic "ACNSF1" | u32 version=1 | u32 dim | u32 n per axis (dim values)
//   | f64 length, eps, mu, kappa, t
//   | physical-space f64 arrays in axis-major order: u components, theta, p
// All integers and floats little-endian.  Fields are stored as physical
// samples (portable across FFT index conventions); Hermitian symmetry is
// re-imposed on load with a drift check.

void write_checkpoint(const ACState& state, const std::string& path);

/// Reads a checkpoint; when expected is non-null the stored grid must
/// match it (the returned state then carries expected's pad factor).
/// Errors: bad magic ("not an ACNSF1 checkpoint"), unsupported version,
/// truncated file, dimension mismatch with the requesting grid.
ACState read_checkpoint(const std::string& path, const GridSpec* expected = nullptr);

}  // namespace acnsf
