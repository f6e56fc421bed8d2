#include "modanom_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "CLI11.hpp"

namespace modanom::cli {

namespace {

const std::vector<std::pair<Suite, std::string>> kSuites{
    {Suite::All, "all"},         {Suite::Foundations, "foundations"}, {Suite::Thm31, "thm31"},
    {Suite::Thm41, "thm41"},     {Suite::Thm51, "thm51"},             {Suite::Corollaries, "corollaries"},
    {Suite::Agw, "agw"}};

double parse_real(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("bad number in '" + whole + "'");
  }
  if (used != s.size()) throw UsageError("bad number in '" + whole + "'");
  return v;
}

std::string trim(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

}  // namespace

std::string to_string(Suite s) {
  for (const auto& [v, name] : kSuites)
    if (v == s) return name;
  return "?";
}

Suite parse_suite(const std::string& s) {
  for (const auto& [v, name] : kSuites)
    if (name == s) return v;
  throw UsageError("unknown suite '" + s + "'");
}

std::string to_string(Format f) { return f == Format::Json ? "json" : "markdown"; }

std::complex<double> parse_complex(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw UsageError("empty complex number");
  if (s.back() != 'i') return {parse_real(s, text), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  const std::string re = split == std::string::npos ? "" : body.substr(0, split);
  const std::string im = split == std::string::npos ? body : body.substr(split);
  double imag = 0;
  if (im.empty() || im == "+")
    imag = 1;
  else if (im == "-")
    imag = -1;
  else
    imag = parse_real(im, text);
  return {re.empty() ? 0.0 : parse_real(re, text), imag};
}

std::vector<std::complex<double>> parse_tau_list(const std::string& text) {
  std::vector<std::complex<double>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (!trim(item).empty()) out.push_back(parse_complex(item));
  if (out.empty()) throw UsageError("no tau samples given");
  return out;
}

std::string format_complex(std::complex<double> z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::vector<long> parse_int_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(trim(text));
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad integer list '" + text + "'");
    }
    if (used != item.size()) throw UsageError("bad integer list '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

void RunConfig::validate() const {
  if (d < 1) throw UsageError("--d must be at least 1");
  if (k < 1) throw UsageError("--k must be at least 1");
  if (static_cast<int>(a.size()) != k || static_cast<int>(b.size()) != k)
    throw UsageError("--a and --b need exactly k = " + std::to_string(k) + " entries each");
  if (q_order < 4) throw UsageError("--q-order must be at least 4");
  if (taus.empty()) throw UsageError("no tau samples");
  for (auto t : taus)
    if (!(t.imag() > 0)) throw UsageError("tau " + format_complex(t) + " is not in the upper half plane");
  if (!(tol > 0)) throw UsageError("--tol must be positive");
  if (jobs < 1) throw UsageError("--jobs must be at least 1");
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json t = nlohmann::json::array();
  for (auto z : taus) t.push_back({z.real(), z.imag()});
  nlohmann::json j{{"suite", to_string(suite)}, {"d", d},     {"k", k},         {"a", a},
                   {"b", b},                    {"q_order", q_order}, {"tau", t}, {"tol", tol},
                   {"format", to_string(format)}};
  if (inject_delta2) j["inject_fault"] = "delta2";
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  c.suite = parse_suite(j.at("suite").get<std::string>());
  c.d = j.at("d").get<int>();
  c.k = j.at("k").get<int>();
  c.a = j.at("a").get<std::vector<long>>();
  c.b = j.at("b").get<std::vector<long>>();
  c.q_order = j.at("q_order").get<int>();
  c.taus.clear();
  for (const auto& t : j.at("tau")) c.taus.emplace_back(t.at(0).get<double>(), t.at(1).get<double>());
  c.tol = j.at("tol").get<double>();
  c.format = j.at("format").get<std::string>() == "markdown" ? Format::Markdown : Format::Json;
  c.inject_delta2 = j.value("inject_fault", "") == "delta2";
  return c;
}

ParseOutcome parse_config(int argc, const char* const* argv) {
  CLI::App app{"Check anomaly cancellation identities and modularity of characteristic forms", "verify"};
  app.set_config("--config", "", "key = value file; flags given on the command line win");

  RunConfig cfg;
  std::string suite = "all", a = "1", b = "1", tau, format = "json", fault;
  app.add_option("--suite", suite, "all, foundations, thm31, thm41, thm51, corollaries, agw");
  app.add_option("--d", cfg.d, "dim M = 4d");
  app.add_option("--k", cfg.k, "number of (a_t, b_t) pairs");
  app.add_option("--a", a, "comma-separated a_t (use --a=-1,2 for a leading minus)");
  app.add_option("--b", b, "comma-separated b_t");
  app.add_option("--q-order", cfg.q_order, "truncation in integer powers of q");
  app.add_option("--tau", tau, "semicolon-separated samples, e.g. \"0.11+1.03i;1i\"");
  app.add_option("--tol", cfg.tol, "relative tolerance for numeric checks");
  app.add_option("--format", format, "json or markdown");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--jobs", cfg.jobs, "worker threads");
  app.add_option("--inject-fault", fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cfg.suite = parse_suite(suite);
  cfg.a = parse_int_list(a);
  cfg.b = parse_int_list(b);
  if (!tau.empty()) cfg.taus = parse_tau_list(tau);
  if (format == "json")
    cfg.format = Format::Json;
  else if (format == "markdown" || format == "md")
    cfg.format = Format::Markdown;
  else
    throw UsageError("unknown format '" + format + "'");
  if (!fault.empty() && fault != "delta2") throw UsageError("unknown fault '" + fault + "'");
  cfg.inject_delta2 = fault == "delta2";
  cfg.validate();
  return {cfg, ""};
}

}  // namespace modanom::cli
