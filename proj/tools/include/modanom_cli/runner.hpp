#pragma once

#include <functional>
#include <string>
#include <vector>

#include "modanom_cli/config.hpp"
#include "modanom_cli/report.hpp"

namespace modanom::cli {

/// One scheduled check. `fallback_id` names the result if the thunk throws.
struct Task {
  std::string fallback_id;
  std::string anchor;
  std::function<std::vector<CheckResult>()> run;
};

/// Checks selected by the config, unscheduled. UsageError when the suite
/// cannot run with these parameters (e.g. thm41 with k != 1).
std::vector<Task> plan_suite(const RunConfig& cfg);

/// Runs every task on up to cfg.jobs threads; engine exceptions become
/// Status::Error results. Output is sorted by id.
Report run_suite(const RunConfig& cfg);

/// 0 pass/flagged only, 1 any fail, 3 any error (wins over fail).
int exit_code(const Report& r);

inline constexpr int kExitOk = 0;
inline constexpr int kExitMathFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;
inline constexpr int kExitIo = 4;

}  // namespace modanom::cli
