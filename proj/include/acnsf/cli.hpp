#pragma once

namespace acnsf {

/// Subcommand dispatch: run, sweep, check-projectors, mollifier-test,
/// wave-residual, compare.  Exit codes: 0 success, 1 numerical failure,
/// 2 usage/config error.
int dispatch(int argc, char** argv);

}  // namespace acnsf
