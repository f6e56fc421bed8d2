#include "modanom_cli/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace modanom::cli {

Summary summarize(const std::vector<CheckResult>& checks) {
  Summary s;
  for (const auto& c : checks) {
    switch (c.status) {
      case Status::Pass:
        ++s.passed;
        break;
      case Status::Fail:
        ++s.failed;
        break;
      case Status::Flagged:
        ++s.flagged;
        break;
      case Status::Error:
        ++s.errors;
        break;
    }
  }
  return s;
}

nlohmann::json check_to_json(const CheckResult& c) {
  nlohmann::json j{{"id", c.id},
                   {"anchor", c.anchor},
                   {"status", to_string(c.status)},
                   {"exact_residual_order", nullptr},
                   {"numeric_max_error", nullptr},
                   {"extracted", c.extracted},
                   {"message", c.message}};
  if (c.exact_residual_order) j["exact_residual_order"] = *c.exact_residual_order;
  if (c.numeric_max_error) j["numeric_max_error"] = *c.numeric_max_error;
  return j;
}

CheckResult check_from_json(const nlohmann::json& j) {
  CheckResult c;
  c.id = j.at("id").get<std::string>();
  c.anchor = j.at("anchor").get<std::string>();
  c.status = parse_status(j.at("status").get<std::string>());
  if (!j.at("exact_residual_order").is_null()) c.exact_residual_order = j["exact_residual_order"].get<int>();
  if (!j.at("numeric_max_error").is_null()) c.numeric_max_error = j["numeric_max_error"].get<double>();
  c.extracted = j.at("extracted");
  c.message = j.at("message").get<std::string>();
  return c;
}

nlohmann::json report_to_json(const Report& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(check_to_json(c));
  nlohmann::json summary{{"passed", r.summary.passed}, {"failed", r.summary.failed}, {"flagged", r.summary.flagged}};
  if (r.summary.errors > 0) summary["errors"] = r.summary.errors;
  return {{"version", r.version},
          {"timestamp", r.timestamp},
          {"config", r.config.to_json()},
          {"checks", checks},
          {"summary", summary}};
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.version = j.at("version").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  r.config = RunConfig::from_json(j.at("config"));
  for (const auto& c : j.at("checks")) r.checks.push_back(check_from_json(c));
  const auto& s = j.at("summary");
  r.summary = {s.at("passed").get<int>(), s.at("failed").get<int>(), s.at("flagged").get<int>(),
               s.value("errors", 0)};
  return r;
}

namespace {

std::string cell(std::string s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|')
      out += "\\|";
    else if (ch == '\n')
      out += ' ';
    else
      out += ch;
  }
  return out;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

}  // namespace

std::string render_markdown(const Report& r) {
  std::ostringstream os;
  os << "# Verification report\n\n";
  os << "suite `" << to_string(r.config.suite) << "`, d = " << r.config.d << ", k = " << r.config.k
     << ", q-order " << r.config.q_order << ", tol " << sci(r.config.tol) << "\n\n";
  os << "| id | anchor | status | residual order | max error | message |\n";
  os << "|---|---|---|---|---|---|\n";
  for (const auto& c : r.checks) {
    os << "| " << cell(c.id) << " | " << cell(c.anchor) << " | " << to_string(c.status) << " | "
       << (c.exact_residual_order ? std::to_string(*c.exact_residual_order) : "-") << " | "
       << (c.numeric_max_error ? sci(*c.numeric_max_error) : "-") << " | " << cell(c.message) << " |\n";
  }
  os << "\npassed " << r.summary.passed << ", failed " << r.summary.failed << ", flagged " << r.summary.flagged
     << ", errors " << r.summary.errors << "\n";
  return os.str();
}

std::string render(const Report& r, Format f) {
  return f == Format::Json ? report_to_json(r).dump(2) + "\n" : render_markdown(r);
}

void emit_report(const Report& r, Format f, const std::string& out) {
  const std::string text = render(r, f);
  if (out.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(out);
  if (!file) throw IoError("cannot open " + out + " for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("write to " + out + " failed");
}

}  // namespace modanom::cli
