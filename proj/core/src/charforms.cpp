#include "modanom/charforms.hpp"

#include <cstdlib>
#include <map>

#include "modanom/errors.hpp"
#include "modanom/linalg.hpp"

namespace modanom {

void GeometrySpec::validate() const {
  if (d <= 0) throw SpecError("d must be positive");
  if (k <= 0) throw SpecError("k must be positive");
  if (static_cast<int>(a.size()) != k || static_cast<int>(b.size()) != k)
    throw SpecError("a and b must both have length k");
  if (n8 <= 0) throw SpecError("q-truncation must be positive");
  if (degree_cap < 0) throw SpecError("degree cap must be non-negative");
}

Caps default_caps(int d) { return {4 * d, 2 * d}; }

RegistryPtr GeometrySpec::registry() const { return Registry::standard(d); }

Caps GeometrySpec::caps() const {
  Caps c = default_caps(d);
  if (degree_cap > 0) c.degree = degree_cap;
  return c;
}

long GeometrySpec::anomaly_weight() const {
  long sum = 0;
  for (int t = 0; t < k; ++t) sum += a[t] * a[t] + 2 * b[t] * b[t];
  return sum;
}

namespace {

mpz_class pow2(unsigned e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, e);
  return p;
}

FormPoly roots_product(const RegistryPtr& reg, Caps caps, const std::vector<Rational>& series) {
  FormPoly acc = FormPoly::constant(reg, caps, 1);
  for (std::size_t j : reg->chern_roots()) acc *= evaluate_series(series, FormPoly::variable(reg, caps, reg->var(j).name));
  return acc;
}

unsigned series_length(Caps caps) { return static_cast<unsigned>(caps.degree / 2); }

}  // namespace

std::vector<Rational> ahat_series(unsigned max_power) {
  const auto bern = bernoulli_numbers(max_power);
  std::vector<Rational> out(max_power + 1);
  for (unsigned n = 0; 2 * n <= max_power; ++n) {
    // (2^{1-2n} - 1) B_{2n} / (2n)!
    const Rational two_pow = n == 0 ? Rational(2) : Rational(1, pow2(2 * n - 1));
    out[2 * n] = (two_pow - 1) * bern[2 * n] / factorial(2 * n);
  }
  return out;
}

std::vector<Rational> lhat_series(unsigned max_power) {
  const auto bern = bernoulli_numbers(max_power);
  std::vector<Rational> out(max_power + 1);
  for (unsigned n = 0; 2 * n <= max_power; ++n) out[2 * n] = 2 * bern[2 * n] / factorial(2 * n);
  return out;
}

FormPoly ahat_form(const RegistryPtr& reg, Caps caps) { return roots_product(reg, caps, ahat_series(series_length(caps))); }
FormPoly ahat_form(int d) { return ahat_form(Registry::standard(d), default_caps(d)); }
FormPoly lhat_form(const RegistryPtr& reg, Caps caps) { return roots_product(reg, caps, lhat_series(series_length(caps))); }
FormPoly lhat_form(int d) { return lhat_form(Registry::standard(d), default_caps(d)); }

FormPoly ch_line(long m, const std::string& var, bool reduced, const RegistryPtr& reg, Caps caps) {
  const FormPoly v = FormPoly::variable(reg, caps, var, Rational(m));
  FormPoly out = exp(v) + exp(-v);
  if (reduced) out -= FormPoly::constant(reg, caps, 2);
  return out;
}

FormPoly ch_line(long m, const std::string& var, bool reduced, int d) {
  return ch_line(m, var, reduced, Registry::standard(d), default_caps(d));
}

FormPoly cosh_half(long m, const std::string& var, const RegistryPtr& reg, Caps caps) {
  const FormPoly v = FormPoly::variable(reg, caps, var, frac(m, 2));
  return (exp(v) + exp(-v)) * Rational(1, 2);
}

FormPoly anomaly_p1(const GeometrySpec& spec, const RegistryPtr& reg, Caps caps) {
  FormPoly p(reg, caps);
  for (std::size_t j : reg->chern_roots()) {
    Monomial m;
    m[j] = 2;
    p.add_term(m, 1);
  }
  Monomial u2;
  u2[reg->index("u")] = 2;
  p.add_term(u2, Rational(-spec.anomaly_weight()));
  return p;
}

FormPoly ch_difference(const GeometrySpec& spec, const RegistryPtr& reg, Caps caps) {
  FormPoly out(reg, caps);
  for (int t = 0; t < spec.k; ++t)
    out += ch_line(spec.b[t], "u", true, reg, caps) - ch_line(spec.a[t], "u", true, reg, caps);
  return out;
}

std::string to_string(WittenBundle w) {
  switch (w) {
    case WittenBundle::Theta1:
      return "Theta1";
    case WittenBundle::Theta2:
      return "Theta2";
    case WittenBundle::ThetaBar1:
      return "ThetaBar1";
    case WittenBundle::ThetaBar2:
      return "ThetaBar2";
  }
  return "?";
}

namespace {

/// Accumulates a Chern character as numerator/denominator products in q.
class ChBuilder {
 public:
  ChBuilder(RegistryPtr reg, Caps caps, int n8)
      : reg_(std::move(reg)), caps_(caps), n8_(n8),
        num_(FormQSeries::constant(reg_, caps_, n8_, 1)),
        den_(FormQSeries::constant(reg_, caps_, n8_, 1)) {}

  // 1 + sign·q^{index/8}·poly
  FormQSeries factor(int index, int sign, const FormPoly& poly) const {
    FormQSeries f = FormQSeries::constant(reg_, caps_, n8_, 1);
    f.add_term(index, poly * Rational(sign));
    return f;
  }

  /// ch Λ_{sign·q^{index/8}} of the reduced bundle with roots ±root, to the
  /// power `mult` (negative powers subtract the bundle).
  void lambda(int index, int sign, const FormPoly& root, int mult) {
    const FormPoly one = FormPoly::constant(reg_, caps_, 1);
    const FormQSeries top = factor(index, sign, exp(root)) * factor(index, sign, exp(-root));
    const FormQSeries plain = factor(index, sign, one);
    const FormQSeries bottom = plain * plain;
    for (int i = 0; i < std::abs(mult); ++i) {
      if (mult > 0) {
        num_ = num_ * top;
        den_ = den_ * bottom;
      } else {
        num_ = num_ * bottom;
        den_ = den_ * top;
      }
    }
  }

  /// ch S_{q^{index/8}} of the reduced bundle with roots ±root.
  void symmetric(int index, const FormPoly& root) {
    const FormPoly one = FormPoly::constant(reg_, caps_, 1);
    const FormQSeries plain = factor(index, -1, one);
    num_ = num_ * plain * plain;
    den_ = den_ * factor(index, -1, exp(root)) * factor(index, -1, exp(-root));
  }

  FormQSeries result() const { return num_ * inverse(den_); }

 private:
  RegistryPtr reg_;
  Caps caps_;
  int n8_;
  FormQSeries num_;
  FormQSeries den_;
};

FormPoly scaled(const RegistryPtr& reg, Caps caps, const std::string& var, long m) {
  return FormPoly::variable(reg, caps, var, Rational(m));
}

void require_eta(const GeometrySpec& spec, const std::string& what) {
  if (!spec.has_eta) throw SpecError(what + " needs the bundle eta (has_eta)");
  if (spec.k != 1) throw SpecError(what + " takes scalar a, b (k = 1)");
}

}  // namespace

FormQSeries witten_bundle_ch(WittenBundle which, const GeometrySpec& spec) {
  spec.validate();
  const bool bar = which == WittenBundle::ThetaBar1 || which == WittenBundle::ThetaBar2;
  if (bar) require_eta(spec, to_string(which));
  const RegistryPtr reg = spec.registry();
  const Caps caps = spec.caps();
  ChBuilder ch(reg, caps, spec.n8);
  const int nf = product_factors(spec.n8);
  const FormPoly eta = FormPoly::variable(reg, caps, "vbar");

  for (int n = 1; n <= nf; ++n) {
    const int full = kGridPerUnit * n;
    const int half = kGridPerUnit * n - kHalfStep;
    for (std::size_t j : reg->chern_roots()) ch.symmetric(full, FormPoly::variable(reg, caps, reg->var(j).name));
    for (int t = 0; t < spec.k; ++t) {
      const FormPoly au = scaled(reg, caps, "u", spec.a[t]);
      const FormPoly bu = scaled(reg, caps, "u", spec.b[t]);
      switch (which) {
        case WittenBundle::Theta1:
        case WittenBundle::ThetaBar1:
          ch.lambda(full, +1, au, 1);
          ch.lambda(half, +1, bu, 1);
          ch.lambda(half, -1, bu, 1);
          if (bar) {
            ch.lambda(full, +1, eta, -2);
            ch.lambda(half, +1, eta, 1);
            ch.lambda(half, -1, eta, 1);
          }
          break;
        case WittenBundle::Theta2:
        case WittenBundle::ThetaBar2:
          ch.lambda(full, +1, bu, 1);
          ch.lambda(half, +1, bu, 1);
          ch.lambda(half, -1, au, 1);
          if (bar) {
            ch.lambda(full, +1, eta, 1);
            ch.lambda(half, +1, eta, 1);
            ch.lambda(half, -1, eta, -2);
          }
          break;
      }
    }
  }
  return ch.result();
}

std::string to_string(QForm f) {
  switch (f) {
    case QForm::Q1:
      return "Q1";
    case QForm::Q2:
      return "Q2";
    case QForm::Q3:
      return "Q3";
    case QForm::QBar1:
      return "QBar1";
    case QForm::QBar2:
      return "QBar2";
    case QForm::QBar3:
      return "QBar3";
    case QForm::Phi1:
      return "Phi1";
    case QForm::Phi2:
      return "Phi2";
    case QForm::Phi3:
      return "Phi3";
  }
  return "?";
}

bool needs_eta(QForm f) { return !(f == QForm::Q1 || f == QForm::Q2 || f == QForm::Q3); }

namespace {

FormQSeries common_factor(const GeometrySpec& spec, const RegistryPtr& reg, Caps caps) {
  const FormPoly p = anomaly_p1(spec, reg, caps) * Rational(1, 24);
  FormQSeries acc = exp(FormQSeries::from_series(eisenstein_e2(spec.n8), p));
  for (std::size_t j : reg->chern_roots())
    acc = acc * theta_block(ThetaKind::Theta, FormPoly::variable(reg, caps, reg->var(j).name), spec.n8);
  return acc;
}

struct XiPattern {
  ThetaKind on_a;
  ThetaKind first_b;
  ThetaKind second_b;
};

}  // namespace

FormQSeries q_form(QForm which, const GeometrySpec& spec, const std::optional<FormPoly>& eta_arg) {
  spec.validate();
  const bool eta = needs_eta(which);
  if (eta) {
    require_eta(spec, to_string(which));
    if (!eta_arg) throw SpecError(to_string(which) + " needs an eta argument");
  }
  const RegistryPtr reg = eta ? eta_arg->registry() : spec.registry();
  const Caps caps = eta ? eta_arg->caps() : spec.caps();
  if (!same_registry(reg, spec.registry())) throw StructuralError("eta argument lives in a foreign registry");

  XiPattern xi{};
  ThetaKind eta_inverse = ThetaKind::Theta1;
  switch (which) {
    case QForm::Q1:
    case QForm::QBar1:
    case QForm::Phi1:
      xi = {ThetaKind::Theta1, ThetaKind::Theta3, ThetaKind::Theta2};
      eta_inverse = ThetaKind::Theta1;
      break;
    case QForm::Q2:
    case QForm::QBar2:
    case QForm::Phi2:
      xi = {ThetaKind::Theta2, ThetaKind::Theta1, ThetaKind::Theta3};
      eta_inverse = ThetaKind::Theta2;
      break;
    case QForm::Q3:
    case QForm::QBar3:
    case QForm::Phi3:
      xi = {ThetaKind::Theta3, ThetaKind::Theta1, ThetaKind::Theta2};
      eta_inverse = ThetaKind::Theta3;
      break;
  }

  FormQSeries acc = common_factor(spec, reg, caps);
  for (int t = 0; t < spec.k; ++t) {
    const FormPoly au = scaled(reg, caps, "u", spec.a[t]);
    const FormPoly bu = scaled(reg, caps, "u", spec.b[t]);
    acc = acc * theta_block(xi.on_a, au, spec.n8) * theta_block(xi.first_b, bu, spec.n8) *
          theta_block(xi.second_b, bu, spec.n8);
  }
  if (eta) {
    for (ThetaKind kind : {ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3}) {
      const FormQSeries block = theta_block(kind, *eta_arg, spec.n8);
      acc = acc * (kind == eta_inverse ? pow(inverse(block), 2) : block);
    }
    return acc * Rational(2);
  }
  return acc * Rational(pow2(static_cast<unsigned>(spec.k)));
}

FormQSeries q_form_from_bundles(QForm which, const GeometrySpec& spec) {
  spec.validate();
  const RegistryPtr reg = spec.registry();
  const Caps caps = spec.caps();
  WittenBundle bundle{};
  FormPoly prefactor = FormPoly::constant(reg, caps, 1);
  switch (which) {
    case QForm::Q1:
      bundle = WittenBundle::Theta1;
      for (long a : spec.a) prefactor *= cosh_half(a, "u", reg, caps) * Rational(2);
      break;
    case QForm::Q2:
      bundle = WittenBundle::Theta2;
      for (long b : spec.b) prefactor *= cosh_half(b, "u", reg, caps) * Rational(2);
      break;
    case QForm::QBar1:
      require_eta(spec, "QBar1");
      bundle = WittenBundle::ThetaBar1;
      prefactor = cosh_half(spec.a[0], "u", reg, caps) * Rational(2) * pow(inverse(cosh_half(1, "vbar", reg, caps)), 2);
      break;
    case QForm::QBar2:
      require_eta(spec, "QBar2");
      bundle = WittenBundle::ThetaBar2;
      prefactor = cosh_half(spec.b[0], "u", reg, caps) * Rational(2) * cosh_half(1, "vbar", reg, caps);
      break;
    default:
      throw SpecError(to_string(which) + " has no bundle description");
  }
  const FormPoly p = anomaly_p1(spec, reg, caps) * Rational(1, 24);
  const FormQSeries anomaly = exp(FormQSeries::from_series(eisenstein_e2(spec.n8), p));
  return anomaly * witten_bundle_ch(bundle, spec) * (prefactor * ahat_form(reg, caps));
}

std::string to_string(CSForm f) {
  switch (f) {
    case CSForm::CSPhi1:
      return "CSPhi1";
    case CSForm::CSPhi2:
      return "CSPhi2";
    case CSForm::CSPhi3:
      return "CSPhi3";
  }
  return "?";
}

std::array<int, 3> log_combination(CSForm f) {
  switch (f) {
    case CSForm::CSPhi1:
      return {-2, 1, 1};
    case CSForm::CSPhi2:
      return {1, -2, 1};
    case CSForm::CSPhi3:
      return {1, 1, -2};
  }
  return {0, 0, 0};
}

FormPoly eta_family(const RegistryPtr& reg, Caps caps) {
  FormPoly r = FormPoly::variable(reg, caps, "r0");
  Monomial ts;
  ts[reg->index("t")] = 1;
  ts[reg->index("s")] = 1;
  r.add_term(ts, 1);
  return r;
}

FormQSeries cs_form(CSForm which, const GeometrySpec& spec, const Rational& alpha_scale) {
  spec.validate();
  require_eta(spec, to_string(which));
  const RegistryPtr reg = spec.registry();
  const Caps out_caps = spec.caps();
  const int top = 4 * spec.d - 1;
  if (out_caps.degree < top) throw CapError("CS forms need a degree cap of at least 4d-1");

  // The integrand's even part is needed only through weight 4d-2, and each
  // t arrives with one s.
  const Caps inner{top - 1, (top - 1) / 2};
  const FormPoly r_t = eta_family(reg, inner);

  const QForm phi = which == CSForm::CSPhi1 ? QForm::Phi1 : which == CSForm::CSPhi2 ? QForm::Phi2 : QForm::Phi3;
  const std::array<int, 3> coeffs = log_combination(which);
  const std::array<ThetaKind, 3> kinds{ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3};
  FormQSeries lambda(reg, inner, spec.n8);
  for (std::size_t i = 0; i < kinds.size(); ++i)
    lambda += theta_log_block(kinds[i], r_t, spec.n8) * Rational(coeffs[i]);
  const FormQSeries even = (q_form(phi, spec, r_t) * lambda).component(top - 1).integrate_t();

  // Attach α and move into the output caps.
  const std::size_t alpha = reg->index("alpha");
  FormQSeries out(reg, out_caps, even.trunc());
  for (const auto& [n, poly] : even.terms()) {
    FormPoly lifted(reg, out_caps);
    for (const auto& [m, c] : poly.terms()) {
      Monomial ma = m;
      ma[alpha] = 1;
      lifted.add_term(ma, c * alpha_scale);
    }
    out.add_term(n, lifted);
  }
  return out;
}

AgwProbe agw_probe(int d) {
  const RegistryPtr reg = Registry::standard(d);
  const Caps caps{4 * d, 0};
  const int top = 4 * d;
  const FormPoly ahat = ahat_form(reg, caps);
  FormPoly ch_tm(reg, caps);
  for (std::size_t j : reg->chern_roots()) ch_tm += ch_line(1, reg->var(j).name, false, reg, caps);
  const FormPoly target = lhat_form(reg, caps).component(top);
  const FormPoly span1 = (ahat * ch_tm).component(top);
  const FormPoly span2 = ahat.component(top);

  std::map<Monomial, int> rows;
  for (const FormPoly* p : {&target, &span1, &span2})
    for (const auto& [m, c] : p->terms()) rows.emplace(m, 0);
  RationalMatrix a;
  RationalMatrix b;
  for (const auto& [m, unused] : rows) {
    a.push_back({span1.coeff(m), span2.coeff(m)});
    b.push_back({target.coeff(m)});
  }
  const LinearSolution sol = solve_exact(a, 2, b);

  AgwProbe out;
  out.d = d;
  out.consistent = sol.consistent;
  out.unique = sol.rank == 2;
  out.lambda = sol.x[0][0];
  out.mu = sol.x[0][1];
  out.residual = target - span1 * out.lambda - span2 * out.mu;
  return out;
}

}  // namespace modanom
