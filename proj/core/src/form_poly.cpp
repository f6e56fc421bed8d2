#include "modanom/form_poly.hpp"

#include <algorithm>
#include <sstream>

#include "modanom/errors.hpp"

namespace modanom {

FormPoly::FormPoly(RegistryPtr reg, Caps caps) : reg_(std::move(reg)), caps_(caps) {
  if (!reg_) throw StructuralError("form without registry");
  if (caps_.degree < 0 || caps_.t < 0) throw StructuralError("negative caps");
}

FormPoly FormPoly::constant(RegistryPtr reg, Caps caps, const Rational& c) {
  FormPoly p(std::move(reg), caps);
  p.add_term(Monomial{}, c);
  return p;
}

FormPoly FormPoly::variable(RegistryPtr reg, Caps caps, const std::string& name, const Rational& c) {
  Monomial m;
  m[reg->index(name)] = 1;
  return monomial(std::move(reg), caps, m, c);
}

FormPoly FormPoly::monomial(RegistryPtr reg, Caps caps, const Monomial& m, const Rational& c) {
  FormPoly p(std::move(reg), caps);
  p.add_term(m, c);
  return p;
}

Rational FormPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational FormPoly::constant_term() const { return coeff(Monomial{}); }

void FormPoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  if (!reg_->admissible(m)) return;
  if (reg_->weight(m) > caps_.degree || reg_->param_degree(m) > caps_.t) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void FormPoly::check_compatible(const FormPoly& other) const {
  if (!same_registry(reg_, other.reg_)) throw StructuralError("forms over different registries");
  if (caps_ != other.caps_) throw StructuralError("forms with different caps");
}

FormPoly FormPoly::component(int w) const {
  FormPoly out(reg_, caps_);
  for (const auto& [m, c] : terms_)
    if (reg_->weight(m) == w) out.terms_.emplace_hint(out.terms_.end(), m, c);
  return out;
}

FormPoly FormPoly::integrate_t() const {
  auto t = reg_->find("t");
  if (!t) return *this;
  FormPoly out(reg_, caps_);
  for (const auto& [m, c] : terms_) {
    Monomial stripped = m;
    const int e = m[*t];
    stripped[*t] = 0;
    out.add_term(stripped, c / Rational(e + 1));
  }
  return out;
}

FormPoly FormPoly::derivative(std::size_t var) const {
  if (var >= reg_->size() || reg_->var(var).kind != VarKind::Even)
    throw StructuralError("derivative only defined for even variables");
  FormPoly out(reg_, caps_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial lowered = m;
    lowered[var] = static_cast<std::uint8_t>(m[var] - 1);
    out.add_term(lowered, c * m[var]);
  }
  return out;
}

FormPoly FormPoly::with_caps(Caps caps) const {
  if (caps.degree > caps_.degree || caps.t > caps_.t)
    throw StructuralError("cannot raise caps of a truncated form");
  FormPoly out(reg_, caps);
  for (const auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

FormPoly FormPoly::substitute(std::size_t var, const FormPoly& value) const {
  check_compatible(value);
  FormPoly out(reg_, caps_);
  std::vector<FormPoly> powers{FormPoly::constant(reg_, caps_, 1)};
  for (const auto& [m, c] : terms_) {
    const unsigned e = m[var];
    while (powers.size() <= e) powers.push_back(powers.back() * value);
    Monomial rest = m;
    rest[var] = 0;
    out.add_product(FormPoly::monomial(reg_, caps_, rest, c), powers[e]);
  }
  return out;
}

FormPoly FormPoly::map_coeffs(const std::function<Rational(const Monomial&, const Rational&)>& f) const {
  FormPoly out(reg_, caps_);
  for (const auto& [m, c] : terms_) out.add_term(m, f(m, c));
  return out;
}

int FormPoly::min_weight() const {
  int w = caps_.degree + 1;
  for (const auto& [m, c] : terms_) w = std::min(w, reg_->weight(m));
  return w;
}

bool FormPoly::is_homogeneous(int w) const {
  for (const auto& [m, c] : terms_)
    if (reg_->weight(m) != w) return false;
  return true;
}

FormPoly FormPoly::operator-() const {
  FormPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

FormPoly& FormPoly::operator+=(const FormPoly& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

FormPoly& FormPoly::operator-=(const FormPoly& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

FormPoly& FormPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

FormPoly& FormPoly::operator*=(const FormPoly& other) {
  *this = *this * other;
  return *this;
}

void FormPoly::add_product(const FormPoly& a, const FormPoly& b) {
  check_compatible(a);
  check_compatible(b);
  // Weight-sorted view of b lets the inner loop stop at the degree cap.
  std::vector<std::pair<int, const std::pair<const Monomial, Rational>*>> bs;
  bs.reserve(b.terms_.size());
  for (const auto& kv : b.terms_) bs.emplace_back(reg_->weight(kv.first), &kv);
  std::sort(bs.begin(), bs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Rational prod;
  for (const auto& [ma, ca] : a.terms_) {
    const int wa = reg_->weight(ma);
    for (const auto& [wb, kv] : bs) {
      if (wa + wb > caps_.degree) break;
      const Monomial m = ma + kv->first;
      if (!reg_->admissible(m) || reg_->param_degree(m) > caps_.t) continue;
      prod = ca * kv->second;
      auto [it, inserted] = terms_.try_emplace(m, prod);
      if (!inserted) {
        it->second += prod;
        if (sgn(it->second) == 0) terms_.erase(it);
      }
    }
  }
}

FormPoly operator*(const FormPoly& a, const FormPoly& b) {
  FormPoly out(a.reg_, a.caps_);
  out.add_product(a, b);
  return out;
}

bool operator==(const FormPoly& a, const FormPoly& b) {
  return same_registry(a.reg_, b.reg_) && a.caps_ == b.caps_ && a.terms_ == b.terms_;
}

std::string FormPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << modanom::to_string(c) << ")";
    if (!m.is_one()) os << "*" << reg_->format(m);
  }
  return os.str();
}

FormPoly pow(const FormPoly& f, unsigned n) {
  FormPoly result = FormPoly::constant(f.registry(), f.caps(), 1);
  for (unsigned i = 0; i < n; ++i) result = result * f;
  return result;
}

namespace {

// Σ_j coeff(j)·g^j for nilpotent g; stops once g^j vanishes.
template <typename CoeffFn>
FormPoly nilpotent_series(const FormPoly& g, CoeffFn coeff) {
  FormPoly result = FormPoly::constant(g.registry(), g.caps(), coeff(0U));
  FormPoly power = FormPoly::constant(g.registry(), g.caps(), 1);
  for (unsigned j = 1;; ++j) {
    power = power * g;
    if (power.is_zero()) break;
    result += power * coeff(j);
  }
  return result;
}

}  // namespace

FormPoly inverse(const FormPoly& f) {
  const Rational c0 = f.constant_term();
  if (sgn(c0) == 0) throw NotInvertible("form has zero constant term");
  FormPoly g = f * (1 / c0) - FormPoly::constant(f.registry(), f.caps(), 1);
  const Rational inv0 = 1 / c0;
  return nilpotent_series(g, [&](unsigned j) -> Rational { return (j % 2 == 0 ? inv0 : -inv0); });
}

FormPoly exp(const FormPoly& f) {
  if (sgn(f.constant_term()) != 0) throw NotNilpotent("exp of a form with nonzero constant term");
  return nilpotent_series(f, [](unsigned j) -> Rational { return 1 / factorial(j); });
}

FormPoly evaluate_series(const std::vector<Rational>& coeffs, const FormPoly& arg) {
  FormPoly result(arg.registry(), arg.caps());
  FormPoly power = FormPoly::constant(arg.registry(), arg.caps(), 1);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j > 0) power = power * arg;
    if (power.is_zero()) break;
    if (sgn(coeffs[j]) != 0) result += power * coeffs[j];
  }
  return result;
}

}  // namespace modanom
