#include <iostream>

#include "modanom_cli/config.hpp"
#include "modanom_cli/report.hpp"
#include "modanom_cli/runner.hpp"

using namespace modanom::cli;

int main(int argc, char** argv) {
  RunConfig cfg;
  try {
    ParseOutcome parsed = parse_config(argc, argv);
    if (!parsed.config) {
      std::cout << parsed.help;
      return kExitOk;
    }
    cfg = *parsed.config;
  } catch (const UsageError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kExitUsage;
  }

  Report report;
  try {
    report = run_suite(cfg);
  } catch (const UsageError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "verify: internal error: " << e.what() << "\n";
    return kExitInternal;
  }

  try {
    emit_report(report, cfg.format, cfg.out);
  } catch (const IoError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kExitIo;
  }
  return exit_code(report);
}
