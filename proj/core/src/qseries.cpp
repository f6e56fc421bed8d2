#include "modanom/qseries.hpp"

#include <algorithm>
#include <sstream>

#include "modanom/errors.hpp"

namespace modanom {

QSeries::QSeries(int trunc) : trunc_(trunc) {
  if (trunc < 0) throw StructuralError("negative truncation index");
}

QSeries QSeries::constant(const Rational& c, int trunc) { return monomial(0, c, trunc); }

QSeries QSeries::monomial(int index, const Rational& c, int trunc) {
  QSeries s(trunc);
  s.add_term(index, c);
  return s;
}

int QSeries::min_index() const { return coeffs_.empty() ? trunc_ : coeffs_.begin()->first; }

Rational QSeries::coeff(int n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void QSeries::add_term(int n, const Rational& c) {
  if (n < 0) throw StructuralError("negative q-exponent index " + std::to_string(n));
  if (n >= trunc_ || sgn(c) == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(n, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) coeffs_.erase(it);
  }
}

QSeries QSeries::truncated(int n) const {
  QSeries out(std::min(n, trunc_));
  for (const auto& [k, c] : coeffs_) {
    if (k >= out.trunc_) break;
    out.coeffs_.emplace_hint(out.coeffs_.end(), k, c);
  }
  return out;
}

bool QSeries::on_grid(int step) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [step](const auto& kv) { return kv.first % step == 0; });
}

QSeries QSeries::operator-() const {
  QSeries out = *this;
  for (auto& [k, c] : out.coeffs_) c = -c;
  return out;
}

QSeries& QSeries::operator+=(const QSeries& other) {
  trunc_ = std::min(trunc_, other.trunc_);
  while (!coeffs_.empty() && coeffs_.rbegin()->first >= trunc_) coeffs_.erase(std::prev(coeffs_.end()));
  for (const auto& [k, c] : other.coeffs_) add_term(k, c);
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& other) {
  trunc_ = std::min(trunc_, other.trunc_);
  while (!coeffs_.empty() && coeffs_.rbegin()->first >= trunc_) coeffs_.erase(std::prev(coeffs_.end()));
  for (const auto& [k, c] : other.coeffs_) add_term(k, -c);
  return *this;
}

QSeries& QSeries::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, v] : coeffs_) v *= c;
  return *this;
}

int product_trunc(int ta, int ma, int tb, int mb) { return std::min(ta + mb, tb + ma); }

QSeries operator*(const QSeries& a, const QSeries& b) {
  QSeries out(product_trunc(a.trunc_, a.min_index(), b.trunc_, b.min_index()));
  Rational t;
  for (const auto& [i, ci] : a.coeffs_) {
    if (i >= out.trunc_) break;
    for (const auto& [j, cj] : b.coeffs_) {
      if (i + j >= out.trunc_) break;
      t = ci * cj;
      out.add_term(i + j, t);
    }
  }
  return out;
}

bool operator==(const QSeries& a, const QSeries& b) { return a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_; }

std::optional<int> QSeries::first_difference(const QSeries& other, int upto) const {
  std::optional<int> best;
  auto consider = [&](int n) {
    if (n < upto && (!best || n < *best)) best = n;
  };
  for (const auto& [k, c] : coeffs_)
    if (other.coeff(k) != c) {
      consider(k);
      break;
    }
  for (const auto& [k, c] : other.coeffs_)
    if (coeff(k) != c) {
      consider(k);
      break;
    }
  return best;
}

std::string QSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << modanom::to_string(c) << ")";
    if (k != 0) os << "*q^(" << modanom::to_string(frac(k, kGridPerUnit)) << ")";
  }
  if (first) os << "0";
  os << " + O(q^(" << modanom::to_string(frac(trunc_, kGridPerUnit)) << "))";
  return os.str();
}

QSeries inverse(const QSeries& f) {
  const Rational c0 = f.coeff(0);
  if (sgn(c0) == 0) throw NotInvertible("series has zero constant term");
  // g_n = -(1/c0) Σ_{k>0} f_k g_{n-k}
  const int trunc = f.trunc();
  std::map<int, Rational> g;
  const Rational inv0 = 1 / c0;
  g[0] = inv0;
  for (int n = 1; n < trunc; ++n) {
    Rational acc = 0;
    for (const auto& [k, fk] : f.coeffs()) {
      if (k == 0) continue;
      if (k > n) break;
      auto it = g.find(n - k);
      if (it != g.end()) acc += fk * it->second;
    }
    if (sgn(acc) != 0) g[n] = -acc * inv0;
  }
  QSeries out(trunc);
  for (const auto& [k, c] : g) out.add_term(k, c);
  return out;
}

QSeries pow(const QSeries& f, unsigned n) {
  QSeries result = QSeries::constant(1, f.trunc());
  QSeries base = f;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace modanom
