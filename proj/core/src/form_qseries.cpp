#include "modanom/form_qseries.hpp"

#include <algorithm>
#include <sstream>

#include "modanom/errors.hpp"

namespace modanom {

FormQSeries::FormQSeries(RegistryPtr reg, Caps caps, int trunc) : reg_(std::move(reg)), caps_(caps), trunc_(trunc) {
  if (!reg_) throw StructuralError("series without registry");
  if (trunc_ < 0) throw StructuralError("negative truncation index");
}

FormQSeries FormQSeries::constant(RegistryPtr reg, Caps caps, int trunc, const Rational& c) {
  FormQSeries s(reg, caps, trunc);
  s.add_term(0, FormPoly::constant(reg, caps, c));
  return s;
}

FormQSeries FormQSeries::from_poly(const FormPoly& poly, int trunc, int index) {
  FormQSeries s(poly.registry(), poly.caps(), trunc);
  s.add_term(index, poly);
  return s;
}

FormQSeries FormQSeries::from_series(const QSeries& series, const FormPoly& poly) {
  FormQSeries s(poly.registry(), poly.caps(), series.trunc());
  for (const auto& [n, c] : series.coeffs()) s.add_term(n, poly * c);
  return s;
}

int FormQSeries::min_index() const { return terms_.empty() ? trunc_ : terms_.begin()->first; }

FormPoly FormQSeries::coeff(int index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? FormPoly(reg_, caps_) : it->second;
}

Rational FormQSeries::cell(const Monomial& m, int index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Rational(0) : it->second.coeff(m);
}

void FormQSeries::add_term(int index, const FormPoly& poly) {
  if (index < 0) throw StructuralError("negative q-exponent index " + std::to_string(index));
  if (!same_registry(reg_, poly.registry()) || caps_ != poly.caps())
    throw StructuralError("coefficient built over a different registry or caps");
  if (index >= trunc_ || poly.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(index, poly);
  if (!inserted) {
    it->second += poly;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::map<Monomial, QSeries> FormQSeries::by_monomial() const {
  std::map<Monomial, QSeries> out;
  for (const auto& [n, poly] : terms_)
    for (const auto& [m, c] : poly.terms()) out.try_emplace(m, QSeries(trunc_)).first->second.add_term(n, c);
  return out;
}

FormQSeries FormQSeries::from_monomials(RegistryPtr reg, Caps caps, int trunc,
                                        const std::map<Monomial, QSeries>& cells) {
  FormQSeries out(reg, caps, trunc);
  for (const auto& [m, series] : cells)
    for (const auto& [n, c] : series.coeffs()) out.add_term(n, FormPoly::monomial(reg, caps, m, c));
  return out;
}

FormQSeries FormQSeries::component(int w) const {
  FormQSeries out(reg_, caps_, trunc_);
  for (const auto& [n, poly] : terms_) out.add_term(n, poly.component(w));
  return out;
}

FormQSeries FormQSeries::integrate_t() const {
  FormQSeries out(reg_, caps_, trunc_);
  for (const auto& [n, poly] : terms_) out.add_term(n, poly.integrate_t());
  return out;
}

FormQSeries FormQSeries::derivative(std::size_t var) const {
  FormQSeries out(reg_, caps_, trunc_);
  for (const auto& [n, poly] : terms_) out.add_term(n, poly.derivative(var));
  return out;
}

FormQSeries FormQSeries::truncated(int trunc) const {
  FormQSeries out(reg_, caps_, std::min(trunc, trunc_));
  for (const auto& [n, poly] : terms_)
    if (n < out.trunc_) out.terms_.emplace(n, poly);
  return out;
}

FormQSeries FormQSeries::with_caps(Caps caps) const {
  FormQSeries out(reg_, caps, trunc_);
  for (const auto& [n, poly] : terms_) out.add_term(n, poly.with_caps(caps));
  return out;
}

bool FormQSeries::on_grid(int step) const {
  return std::all_of(terms_.begin(), terms_.end(), [step](const auto& kv) { return kv.first % step == 0; });
}

Rational FormQSeries::unit_part() const { return cell(Monomial{}, 0); }

void FormQSeries::check_compatible(const FormQSeries& other) const {
  if (!same_registry(reg_, other.reg_)) throw StructuralError("series over different registries");
  if (caps_ != other.caps_) throw StructuralError("series with different caps");
}

FormQSeries FormQSeries::operator-() const {
  FormQSeries out = *this;
  for (auto& [n, poly] : out.terms_) poly = -poly;
  return out;
}

FormQSeries& FormQSeries::operator+=(const FormQSeries& other) {
  check_compatible(other);
  trunc_ = std::min(trunc_, other.trunc_);
  terms_.erase(terms_.lower_bound(trunc_), terms_.end());
  for (const auto& [n, poly] : other.terms_) add_term(n, poly);
  return *this;
}

FormQSeries& FormQSeries::operator-=(const FormQSeries& other) {
  check_compatible(other);
  trunc_ = std::min(trunc_, other.trunc_);
  terms_.erase(terms_.lower_bound(trunc_), terms_.end());
  for (const auto& [n, poly] : other.terms_) add_term(n, -poly);
  return *this;
}

FormQSeries& FormQSeries::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [n, poly] : terms_) poly *= c;
  return *this;
}

FormQSeries operator*(const FormQSeries& a, const FormQSeries& b) {
  a.check_compatible(b);
  const int trunc = product_trunc(a.trunc_, a.min_index(), b.trunc_, b.min_index());
  std::map<int, FormPoly> acc;
  for (const auto& [i, pa] : a.terms_) {
    if (i >= trunc) break;
    for (const auto& [j, pb] : b.terms_) {
      if (i + j >= trunc) break;
      acc.try_emplace(i + j, a.reg_, a.caps_).first->second.add_product(pa, pb);
    }
  }
  FormQSeries out(a.reg_, a.caps_, trunc);
  for (auto& [n, poly] : acc)
    if (!poly.is_zero()) out.terms_.emplace(n, std::move(poly));
  return out;
}

FormQSeries operator*(const FormQSeries& a, const FormPoly& b) {
  FormQSeries out(a.reg_, a.caps_, a.trunc_);
  for (const auto& [n, poly] : a.terms_) out.add_term(n, poly * b);
  return out;
}

bool operator==(const FormQSeries& a, const FormQSeries& b) {
  return same_registry(a.reg_, b.reg_) && a.caps_ == b.caps_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
}

std::optional<int> FormQSeries::first_difference(const FormQSeries& other) const {
  check_compatible(other);
  const int upto = std::min(trunc_, other.trunc_);
  auto ia = terms_.begin();
  auto ib = other.terms_.begin();
  while (ia != terms_.end() || ib != other.terms_.end()) {
    int na = ia == terms_.end() ? upto : ia->first;
    int nb = ib == other.terms_.end() ? upto : ib->first;
    int n = std::min(na, nb);
    if (n >= upto) break;
    if (na != nb) return n;
    if (!(ia->second == ib->second)) return n;
    ++ia;
    ++ib;
  }
  return std::nullopt;
}

std::string FormQSeries::to_string() const {
  std::ostringstream os;
  for (const auto& [n, poly] : terms_)
    os << "q^(" << modanom::to_string(frac(n, kGridPerUnit)) << "): " << poly.to_string() << "\n";
  os << "O(q^(" << modanom::to_string(frac(trunc_, kGridPerUnit)) << "))";
  return os.str();
}

FormQSeries pow(const FormQSeries& f, unsigned n) {
  FormQSeries result = FormQSeries::constant(f.registry(), f.caps(), f.trunc(), 1);
  for (unsigned i = 0; i < n; ++i) result = result * f;
  return result;
}

FormQSeries inverse(const FormQSeries& f) {
  if (sgn(f.unit_part()) == 0) throw NotInvertible("series is not a unit");
  const FormPoly g0 = inverse(f.coeff(0));
  std::map<int, FormPoly> g;
  g.emplace(0, g0);
  for (int n = 1; n < f.trunc(); ++n) {
    FormPoly acc(f.registry(), f.caps());
    for (const auto& [k, fk] : f.terms()) {
      if (k == 0) continue;
      if (k > n) break;
      auto it = g.find(n - k);
      if (it != g.end()) acc.add_product(fk, it->second);
    }
    if (!acc.is_zero()) g.emplace(n, -(g0 * acc));
  }
  FormQSeries out(f.registry(), f.caps(), f.trunc());
  for (const auto& [n, poly] : g) out.add_term(n, poly);
  return out;
}

FormQSeries exp(const FormQSeries& f) {
  if (sgn(f.unit_part()) != 0) throw NotNilpotent("exp needs a series without unit part");
  // With E = exp(f): n·E_n = Σ_{k>0} k·f_k·E_{n-k}, E_0 = exp(f_0).
  std::map<int, FormPoly> e;
  e.emplace(0, exp(f.coeff(0)));
  for (int n = 1; n < f.trunc(); ++n) {
    FormPoly acc(f.registry(), f.caps());
    for (const auto& [k, fk] : f.terms()) {
      if (k == 0) continue;
      if (k > n) break;
      auto it = e.find(n - k);
      if (it != e.end()) acc.add_product(fk * Rational(k), it->second);
    }
    if (!acc.is_zero()) e.emplace(n, acc * Rational(1, n));
  }
  FormQSeries out(f.registry(), f.caps(), f.trunc());
  for (const auto& [n, poly] : e) out.add_term(n, poly);
  return out;
}

FormQSeries compose(const FormQSeries& univariate, const FormPoly& arg) {
  if (univariate.registry()->size() != 1) throw StructuralError("compose expects a one-variable series");
  if (sgn(arg.constant_term()) != 0) throw NotNilpotent("substituted argument has a constant term");
  const auto& uvar = univariate.registry()->var(0);
  const int w_arg = std::max(1, arg.min_weight());
  const int j_max = arg.caps().degree / w_arg;
  if (uvar.weight * j_max > univariate.caps().degree && !arg.is_zero())
    throw CapError("one-variable block truncated below the target weight");
  std::vector<FormPoly> powers{FormPoly::constant(arg.registry(), arg.caps(), 1)};
  FormQSeries out(arg.registry(), arg.caps(), univariate.trunc());
  for (const auto& [n, poly] : univariate.terms()) {
    FormPoly value(arg.registry(), arg.caps());
    for (const auto& [m, c] : poly.terms()) {
      const unsigned j = m[0];
      while (powers.size() <= j) powers.push_back(powers.back() * arg);
      if (!powers[j].is_zero()) value += powers[j] * c;
    }
    out.add_term(n, value);
  }
  return out;
}

FormQSeries t_action_exact(const FormQSeries& f) {
  if (!f.on_grid(kHalfStep)) throw StructuralError("t_action_exact needs a q^{1/2}-grid series");
  FormQSeries out(f.registry(), f.caps(), f.trunc());
  for (const auto& [n, poly] : f.terms()) out.add_term(n, (n / kHalfStep) % 2 == 0 ? poly : -poly);
  return out;
}

}  // namespace modanom
