#pragma once

#include <string>

#include "acnsf/convergence_lab.hpp"

namespace acnsf {

/// CSV with the fixed column order
/// t,E,D,balance_residual,div_u_L2,Qu_L2,Qu_L4,sqrt_eps_p_L2,u_L2,theta_L2
/// and 17-significant-digit floats (round-trip exact).
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records);

/// One JSON object per eps (exactly eps_list.size() lines).
std::string sweep_ndjson(const SweepReport& report);

/// Tidy CSV of the log-log order fits: key,slope,stderr,ci95,eps,value
/// (one row per raw point, fit values repeated).
std::string fits_csv(const std::vector<NormFit>& fits);

std::string layer_probe_csv(const LayerProbe& probe);
std::string strichartz_csv(const StrichartzReport& rep);
std::string wave_residual_json(const WaveResidualReport& rep);
std::string limit_check_csv(const std::vector<LimitCheckRow>& rows);

/// %.16e (17 significant digits).
std::string format_double(double v);

}  // namespace acnsf
