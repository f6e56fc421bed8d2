#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace modanom::cli {

enum class Suite { All, Foundations, Thm31, Thm41, Thm51, Corollaries, Agw };
std::string to_string(Suite s);
Suite parse_suite(const std::string& s);

enum class Format { Json, Markdown };
std::string to_string(Format f);

struct RunConfig {
  Suite suite = Suite::All;
  int d = 1;
  int k = 1;
  std::vector<long> a{1};
  std::vector<long> b{1};
  int q_order = 8;  ///< integer q-powers; N8 = 8·q_order
  std::vector<std::complex<double>> taus{{0.0, 1.0}, {0.11, 1.03}, {-0.37, 1.21}};
  double tol = 1e-8;
  Format format = Format::Json;
  std::string out;  ///< empty: stdout
  int jobs = 1;
  bool inject_delta2 = false;

  int n8() const { return 8 * q_order; }
  /// UsageError when the fields are inconsistent.
  void validate() const;
  /// Echo for reports; leaves out where the report goes and how it was scheduled.
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);

  bool operator==(const RunConfig&) const = default;
};

/// Bad flags or values; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "0.11+1.03i", "1i", "i", "-2" and friends.
std::complex<double> parse_complex(const std::string& text);
/// Semicolon-separated complex list.
std::vector<std::complex<double>> parse_tau_list(const std::string& text);
std::string format_complex(std::complex<double> z);
/// "1,2,-3"
std::vector<long> parse_int_list(const std::string& text);

struct ParseOutcome {
  std::optional<RunConfig> config;  ///< empty when help was printed
  std::string help;
};

/// Flags override values from --config (a key = value file using the long
/// flag names). Throws UsageError.
ParseOutcome parse_config(int argc, const char* const* argv);

}  // namespace modanom::cli
