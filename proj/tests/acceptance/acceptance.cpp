// Acceptance run: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "modanom/charforms.hpp"
#include "modanom/theta.hpp"
#include "modanom/verifier.hpp"
#include "random_forms.hpp"

using namespace modanom;
using modanom::testing::agree;
using modanom::testing::RandomForms;

namespace {

constexpr int kN8 = 72;  // through q^8 inclusive

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

GeometrySpec make(int d, int k, std::vector<long> a, std::vector<long> b, bool eta = false) {
  GeometrySpec s;
  s.d = d;
  s.k = k;
  s.a = std::move(a);
  s.b = std::move(b);
  s.has_eta = eta;
  s.n8 = kN8;
  return s;
}

std::string describe(const CheckResult& r) {
  return r.id + " " + to_string(r.status) + (r.message.empty() ? "" : " (" + r.message + ")");
}

void expect_status(Outcome& out, const CheckResult& r, Status want = Status::Pass) {
  out.require(r.status == want, describe(r));
}

Outcome foundations_exact() {
  Outcome out;
  out.require(jacobi_check(161), "Jacobi identity fails below q^21");
  const ModularPair p1 = delta_eps(1, kN8), p2 = delta_eps(2, kN8), p3 = delta_eps(3, kN8);
  out.require(p1.delta.coeff(0) == Rational(1, 4) && p1.delta.coeff(8) == 6, "delta1 leading terms");
  out.require(p1.epsilon.coeff(0) == Rational(1, 16) && p1.epsilon.coeff(8) == -1, "eps1 leading terms");
  out.require(p2.delta.coeff(0) == Rational(-1, 8) && p2.delta.coeff(4) == -3, "delta2 leading terms");
  out.require(p3.delta.coeff(0) == Rational(-1, 8) && p3.delta.coeff(4) == 3, "delta3 leading terms");
  out.require(p2.epsilon.coeff(4) == 1 && p3.epsilon.coeff(4) == -1, "eps2/eps3 leading terms");
  if (out.ok) out.detail = "Jacobi exact through q^20, delta/eps leading terms exact";
  return out;
}

Outcome foundations_numeric() {
  Outcome out;
  double worst = 0;
  const auto results = check_foundations(kN8);
  for (const auto& r : results) {
    expect_status(out, r);
    if (r.numeric_max_error) worst = std::max(worst, *r.numeric_max_error);
  }
  if (out.ok) {
    std::ostringstream os;
    os << results.size() << " checks pass, max error " << worst;
    out.detail = os.str();
  }
  return out;
}

Outcome bundle_vs_theta() {
  Outcome out;
  int compared = 0;
  for (const auto& spec : {make(1, 1, {1}, {1}), make(1, 2, {1, 2}, {2, 1}), make(2, 1, {2}, {1})})
    for (QForm f : {QForm::Q1, QForm::Q2}) {
      const auto diff = q_form(f, spec).first_difference(q_form_from_bundles(f, spec));
      out.require(!diff, to_string(f) + " d=" + std::to_string(spec.d) + " k=" + std::to_string(spec.k) +
                             " differs at index " + std::to_string(diff.value_or(-1)));
      ++compared;
    }
  for (const auto& spec : {make(1, 1, {1}, {1}, true), make(1, 1, {2}, {1}, true), make(2, 1, {2}, {1}, true)}) {
    const FormPoly eta = FormPoly::variable(spec.registry(), spec.caps(), "vbar");
    for (QForm f : {QForm::QBar1, QForm::QBar2}) {
      const auto diff = q_form(f, spec, eta).first_difference(q_form_from_bundles(f, spec));
      out.require(!diff, to_string(f) + " d=" + std::to_string(spec.d) + " differs");
      ++compared;
    }
  }
  if (out.ok) out.detail = std::to_string(compared) + " pairs equal cell by cell";
  return out;
}

Outcome theorem_3_1() {
  Outcome out;
  for (const auto& spec : {make(1, 1, {1}, {1}), make(1, 2, {1, 2}, {2, 1}), make(2, 1, {2}, {1}),
                           make(2, 2, {1, 3}, {2, 2})})
    expect_status(out, check_theorem_3_1(spec));
  if (out.ok) out.detail = "4 configurations: residual 0, Q1 rebuild exact, h_0/h_1 match";
  return out;
}

Outcome corollaries() {
  Outcome out;
  const std::vector<std::pair<long, long>> charges{{1, 1}, {0, 0}, {-1, 2}, {3, -2}};
  int n = 0;
  for (auto [a, b] : charges) {
    for (Corollary c : {Corollary::C32, Corollary::C33Formula, Corollary::C42}) {
      expect_status(out, check_corollary(c, make(1, 1, {a}, {b}, c == Corollary::C42)));
      ++n;
    }
    for (Corollary c : {Corollary::C34, Corollary::C43}) {
      expect_status(out, check_corollary(c, make(2, 1, {a}, {b}, c == Corollary::C43)));
      ++n;
    }
  }
  if (out.ok) out.detail = std::to_string(n) + " identities exact over (a,b) in {(1,1),(0,0),(-1,2),(3,-2)}";
  return out;
}

Outcome theorem_4_1() {
  Outcome out;
  for (const auto& spec : {make(1, 1, {1}, {1}, true), make(1, 1, {2}, {1}, true), make(2, 1, {2}, {1}, true)})
    expect_status(out, check_theorem_4_1(spec));
  if (out.ok) out.detail = "3 configurations pass with the three-term prediction";
  return out;
}

Outcome s_relations() {
  Outcome out;
  double worst = 0;
  auto record = [&](const CheckResult& r) {
    expect_status(out, r);
    if (r.numeric_max_error) worst = std::max(worst, *r.numeric_max_error);
  };
  for (const auto& spec : {make(1, 1, {2}, {1}), make(2, 1, {2}, {1}), make(1, 2, {1, 2}, {2, 1})})
    record(check_s_relation(SPair::Q, spec));
  for (const auto& spec : {make(1, 1, {2}, {1}, true), make(2, 1, {2}, {1}, true)}) {
    record(check_s_relation(SPair::QBar, spec));
    record(check_s_relation(SPair::CS, spec));
    record(check_theorem_5_1(spec));
  }
  if (out.ok) {
    std::ostringstream os;
    os << "max relative error " << worst << " at 3 tau samples, tail bound enforced";
    out.detail = os.str();
  }
  return out;
}

Outcome t_relations_and_modularity() {
  Outcome out;
  for (const auto& spec : {make(1, 1, {2}, {1}, true), make(2, 1, {2}, {1}, true)}) {
    const CheckResult r = check_theorem_5_1(spec);
    expect_status(out, r);
    for (const auto& [name, sum] : r.extracted["anomaly_coefficient_sums"].items())
      out.require(sum.get<int>() == 0, "additive term survives in " + name);
  }
  NumericOptions opts;
  opts.tol = 1e-6;
  const std::array<Group, 3> groups{Group::Gamma0_2, Group::GammaU0_2, Group::GammaTheta};
  int n = 0;
  for (FamilyKind kind : {FamilyKind::Delta, FamilyKind::Epsilon, FamilyKind::Q, FamilyKind::QBar, FamilyKind::CS}) {
    const GeometrySpec spec = make(2, 1, {2}, {1}, kind == FamilyKind::QBar || kind == FamilyKind::CS);
    const Family fam = build_family(kind, spec, opts);
    for (int i = 1; i <= 3; ++i) {
      expect_status(out, check_modularity(fam, i, groups[i - 1], opts));
      ++n;
    }
  }
  if (out.ok) out.detail = "CS T-images exact, Lambda sums 0, " + std::to_string(n) + " generator checks pass";
  return out;
}

Outcome agw() {
  Outcome out;
  const CheckResult r = check_agw(3);
  const auto& x = r.extracted;
  out.require(r.status == Status::Flagged || r.status == Status::Pass, describe(r));
  out.require(x.contains("lambda") && x.contains("mu") && x.contains("stated"), "solution not recorded");
  out.require(x.contains("residual") && x["residual"].empty(), "residual not zero");
  out.require(x.value("unique", false), "solve not unique");
  if (out.ok)
    out.detail = "solved (lambda, mu) = (" + x["lambda"].get<std::string>() + ", " + x["mu"].get<std::string>() +
                 "), stated " + x["stated"].dump() + ", status " + to_string(r.status);
  return out;
}

Outcome properties() {
  Outcome out;
  RandomForms rnd(20261018);
  int bad = 0;
  const int kInstances = 100;

  for (int i = 0; i < kInstances; ++i) {
    const int t = rnd.integer(8, 40);
    const QSeries a = rnd.series(t, 6), b = rnd.series(t, 6), c = rnd.series(t, 6);
    if (!agree(a * b, b * a) || !agree((a * b) * c, a * (b * c)) || !agree(a * (b + c), a * b + a * c)) ++bad;
    const QSeries u = rnd.series(t, 6, true);
    if (!agree(u * inverse(u), QSeries::constant(1, t))) ++bad;
    const int n = rnd.integer(1, t);
    if (!((u * a).truncated(n) == (u.truncated(n) * a.truncated(n)).truncated(n))) ++bad;
  }
  out.require(bad == 0, std::to_string(bad) + " q-series instances fail");

  const RegistryPtr reg = Registry::standard(1);
  const Caps caps{4, 2};
  const std::vector<std::string> vars{"x1", "x2", "u"};
  bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    const int t = rnd.integer(8, 24);
    const FormQSeries a = rnd.form_series(reg, caps, vars, t, 4), b = rnd.form_series(reg, caps, vars, t, 4),
                      c = rnd.form_series(reg, caps, vars, t, 4);
    if (!agree(a * b, b * a) || !agree((a * b) * c, a * (b * c)) || !agree(a * (b + c), a * b + a * c)) ++bad;
    const FormQSeries u = rnd.form_series(reg, caps, vars, t, 4, true);
    const FormQSeries one = FormQSeries::constant(reg, caps, t, 1);
    if (!agree(u * inverse(u), one)) ++bad;
    const FormQSeries n1 = rnd.nilpotent_series(reg, caps, vars, t, 4), n2 = rnd.nilpotent_series(reg, caps, vars, t, 4);
    if (!agree(exp(n1 + n2), exp(n1) * exp(n2)) || !agree(exp(n1) * exp(-n1), one)) ++bad;
    const int n = rnd.integer(1, t);
    if (!(inverse(u).truncated(n) == inverse(u.truncated(n)).truncated(n)) ||
        !(exp(n1).truncated(n) == exp(n1.truncated(n)).truncated(n)))
      ++bad;
  }
  out.require(bad == 0, std::to_string(bad) + " form-series instances fail");

  bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    const int d = rnd.integer(1, 3);
    const RegistryPtr r = Registry::standard(d);
    const Caps dc{4 * d, 2};
    const std::vector<std::string> v =
        d == 1 ? std::vector<std::string>{"x1", "x2", "u"} : std::vector<std::string>{"x1", "x2", "x3", "x4", "u"};
    const ModularPair basis = delta_eps(rnd.integer(1, 2), 48);
    FormQSeries f(r, dc, 48);
    std::vector<FormPoly> h;
    for (int k = 0; k <= d / 2; ++k) {
      h.push_back(rnd.homogeneous(r, dc, v, 4 * d, 3));
      f += FormQSeries::from_series(gamma_basis_element(basis, d, k), h.back());
    }
    const Decomposition dec = decompose_gamma_basis(f, d, basis);
    if (dec.h != h || !dec.residual.is_zero()) ++bad;
  }
  out.require(bad == 0, std::to_string(bad) + " decomposition round trips fail");

  if (out.ok) out.detail = std::to_string(kInstances) + " instances each: ring, inverse, exp, truncation, round trip";
  return out;
}

struct Criterion {
  int number;
  double budget_s;  // 0 means no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, 5, foundations_exact},   {2, 5, foundations_numeric}, {3, 30, bundle_vs_theta},
      {4, 60, theorem_3_1},        {5, 30, corollaries},        {6, 0, theorem_4_1},
      {7, 0, s_relations},         {8, 0, t_relations_and_modularity},
      {9, 120, agw},               {10, 0, properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) o.require(false, "over the time budget");
    if (!o.ok) ++failures;
    std::printf("criterion %d: %s (%.2f s) %s\n", c.number, o.ok ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
