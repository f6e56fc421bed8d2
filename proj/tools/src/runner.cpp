#include "modanom_cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <thread>

namespace modanom::cli {

namespace {

std::string tag(const RunConfig& cfg) {
  auto list = [](const std::vector<long>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
  };
  return "[d=" + std::to_string(cfg.d) + ",k=" + std::to_string(cfg.k) + ",a=" + list(cfg.a) + ",b=" + list(cfg.b) +
         "]";
}

GeometrySpec spec_of(const RunConfig& cfg, bool eta) {
  GeometrySpec s;
  s.d = cfg.d;
  s.k = cfg.k;
  s.a = cfg.a;
  s.b = cfg.b;
  s.n8 = cfg.n8();
  s.has_eta = eta;
  return s;
}

NumericOptions options_of(const RunConfig& cfg) {
  NumericOptions o;
  o.taus = cfg.taus;
  o.tol = cfg.tol;
  o.corrupt_delta2 = cfg.inject_delta2;
  return o;
}

Task single(std::string id, std::string anchor, std::function<CheckResult()> f) {
  return {std::move(id), std::move(anchor), [f = std::move(f)] { return std::vector<CheckResult>{f()}; }};
}

const std::array<Group, 3> kGroups{Group::Gamma0_2, Group::GammaU0_2, Group::GammaTheta};

void add_family_checks(std::vector<Task>& tasks, const RunConfig& cfg, FamilyKind kind, SPair pair,
                       const std::string& anchor) {
  const bool eta = kind != FamilyKind::Q;
  const GeometrySpec spec = spec_of(cfg, eta);
  const NumericOptions opts = options_of(cfg);
  tasks.push_back(single("s-relation[" + to_string(pair) + "]" + tag(cfg), anchor,
                         [=] { return check_s_relation(pair, spec, opts); }));
  for (int i = 1; i <= 3; ++i)
    tasks.push_back(single("modularity[" + to_string(kind) + std::to_string(i) + "," + to_string(kGroups[i - 1]) +
                               "]" + tag(cfg),
                           anchor, [=] { return check_modularity(kind, i, kGroups[i - 1], spec, opts); }));
}

void need_scalar(const RunConfig& cfg, const std::string& suite) {
  if (cfg.k != 1) throw UsageError("suite " + suite + " needs k = 1 (scalar a and b)");
}

void plan_thm31(std::vector<Task>& tasks, const RunConfig& cfg) {
  const GeometrySpec spec = spec_of(cfg, false);
  const NumericOptions opts = options_of(cfg);
  tasks.push_back(single("thm3.1" + tag(cfg), "Thm 3.1", [=] { return check_theorem_3_1(spec, opts); }));
  add_family_checks(tasks, cfg, FamilyKind::Q, SPair::Q, "Thm 3.1");
}

void plan_thm41(std::vector<Task>& tasks, const RunConfig& cfg) {
  need_scalar(cfg, "thm41");
  const GeometrySpec spec = spec_of(cfg, true);
  const NumericOptions opts = options_of(cfg);
  tasks.push_back(single("thm4.1" + tag(cfg), "Thm 4.1", [=] { return check_theorem_4_1(spec, opts); }));
  add_family_checks(tasks, cfg, FamilyKind::QBar, SPair::QBar, "Thm 4.1");
}

void plan_thm51(std::vector<Task>& tasks, const RunConfig& cfg) {
  need_scalar(cfg, "thm51");
  const GeometrySpec spec = spec_of(cfg, true);
  const NumericOptions opts = options_of(cfg);
  tasks.push_back(single("thm5.1" + tag(cfg), "Thm 5.1", [=] { return check_theorem_5_1(spec, opts); }));
  add_family_checks(tasks, cfg, FamilyKind::CS, SPair::CS, "Thm 5.1");
}

void plan_corollaries(std::vector<Task>& tasks, const RunConfig& cfg) {
  std::vector<Corollary> list;
  if (cfg.d == 1) list = {Corollary::C32, Corollary::C33Formula};
  if (cfg.d == 2) list = {Corollary::C34};
  if (list.empty()) throw UsageError("corollaries exist for d = 1 and d = 2 only");
  if (cfg.k == 1) list.push_back(cfg.d == 1 ? Corollary::C42 : Corollary::C43);
  for (Corollary c : list) {
    const bool eta = c == Corollary::C42 || c == Corollary::C43;
    const GeometrySpec spec = spec_of(cfg, eta);
    tasks.push_back(single(to_string(c) + tag(cfg), "Corollary", [=] { return check_corollary(c, spec); }));
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::vector<Task> plan_suite(const RunConfig& cfg) {
  cfg.validate();
  std::vector<Task> tasks;
  const NumericOptions opts = options_of(cfg);
  const int n8 = cfg.n8();
  auto foundations = [&] {
    tasks.push_back({"foundations", "Foundations", [=] { return check_foundations(n8, opts); }});
  };
  auto agw = [&] { tasks.push_back(single("agw[d=3]", "AGW", [] { return check_agw(3); })); };

  switch (cfg.suite) {
    case Suite::Foundations:
      foundations();
      break;
    case Suite::Thm31:
      plan_thm31(tasks, cfg);
      break;
    case Suite::Thm41:
      plan_thm41(tasks, cfg);
      break;
    case Suite::Thm51:
      plan_thm51(tasks, cfg);
      break;
    case Suite::Corollaries:
      plan_corollaries(tasks, cfg);
      break;
    case Suite::Agw:
      agw();
      break;
    case Suite::All:
      foundations();
      plan_thm31(tasks, cfg);
      if (cfg.k == 1) {
        plan_thm41(tasks, cfg);
        plan_thm51(tasks, cfg);
      }
      if (cfg.d == 1 || cfg.d == 2) plan_corollaries(tasks, cfg);
      agw();
      break;
  }
  return tasks;
}

Report run_suite(const RunConfig& cfg) {
  const std::vector<Task> tasks = plan_suite(cfg);
  std::vector<std::vector<CheckResult>> results(tasks.size());

  auto run_one = [&](std::size_t i) {
    try {
      results[i] = tasks[i].run();
    } catch (const std::exception& e) {
      CheckResult r;
      r.id = tasks[i].fallback_id;
      r.anchor = tasks[i].anchor;
      r.status = Status::Error;
      r.message = e.what();
      results[i] = {r};
    }
  };

  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), tasks.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) run_one(i);
      });
    for (auto& t : pool) t.join();
  }

  Report report;
  report.timestamp = utc_timestamp();
  report.config = cfg;
  report.config.out.clear();
  report.config.jobs = 1;
  for (auto& batch : results)
    for (auto& r : batch) report.checks.push_back(std::move(r));
  std::stable_sort(report.checks.begin(), report.checks.end(),
                   [](const CheckResult& x, const CheckResult& y) { return x.id < y.id; });
  report.summary = summarize(report.checks);
  return report;
}

int exit_code(const Report& r) {
  if (r.summary.errors > 0) return kExitInternal;
  if (r.summary.failed > 0) return kExitMathFailure;
  return kExitOk;
}

}  // namespace modanom::cli
