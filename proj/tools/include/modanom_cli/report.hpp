#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "modanom/verifier.hpp"
#include "modanom_cli/config.hpp"

namespace modanom::cli {

inline constexpr const char* kReportVersion = "1";

struct Summary {
  int passed = 0;
  int failed = 0;
  int flagged = 0;
  int errors = 0;

  bool operator==(const Summary&) const = default;
};

struct Report {
  std::string version = kReportVersion;
  std::string timestamp;
  RunConfig config;
  std::vector<CheckResult> checks;  ///< sorted by id
  Summary summary;

  bool operator==(const Report&) const = default;
};

Summary summarize(const std::vector<CheckResult>& checks);

nlohmann::json check_to_json(const CheckResult& c);
CheckResult check_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

std::string render_markdown(const Report& r);
/// Report text in the configured format.
std::string render(const Report& r, Format f);

/// Writes to cfg.out (stdout when empty). Throws IoError.
void emit_report(const Report& r, Format f, const std::string& out);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace modanom::cli
