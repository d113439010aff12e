#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "liftlab/analysis.hpp"

namespace liftlab {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

struct RunConfig {
  Index N = kDefaultTruncation;
  Tolerances tol;
  std::uint64_t seed = 0;
  std::vector<Complex> grid;
};

/// 16 roots of unity scaled by 0.7.
std::vector<Complex> default_grid();

/// Pinned thresholds of the identity suites.
inline constexpr double kTransferAgreementTol = 1e-12;
inline constexpr double kIdentityTol = 1e-10;

struct IdentitySummary {
  std::string suite;
  Index trials = 0;
  double max_transfer_residual = 0;   // |eval_transfer - eval_transfer_system|
  Index cyclic_checked = 0;
  Index cyclic_disagreements = 0;     // controllable != cyclic_for_M
  Index cyclic_controllable = 0;      // how many instances were controllable
  double max_feedback_residual = 0;
  double max_coupling_residual = 0;
  double max_residual = 0;
  bool pass = false;
};

/// suite is "realization", "feedback", "coupling" or "all".
IdentitySummary run_identities(const std::string& suite, Index trials, std::uint64_t seed,
                               const std::vector<Complex>& grid = default_grid());

/// Reads LIFTLAB_TOL (check_tol override); throws InvalidArgument when unparsable.
Tolerances tolerances_from_env();

/// Full command line without the program name. Reports go to `out`,
/// diagnostics to `err`; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liftlab
