#pragma once

#include <map>
#include <optional>
#include <string>

#include "modanom/rational.hpp"

namespace modanom {

/// Exponent index n stands for q^{n/8}.
inline constexpr int kGridPerUnit = 8;
/// Index step of q^{1/2}.
inline constexpr int kHalfStep = 4;

/// Truncated series in q^{1/8} with exact rational coefficients.
///
/// Coefficients at indices >= trunc() are unknown. Zero coefficients are
/// never stored and negative indices are rejected.
class QSeries {
 public:
  using Coeffs = std::map<int, Rational>;

  explicit QSeries(int trunc = 0);

  static QSeries constant(const Rational& c, int trunc);
  static QSeries monomial(int index, const Rational& c, int trunc);

  int trunc() const { return trunc_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Smallest stored index, or trunc() for the zero series.
  int min_index() const;
  Rational coeff(int n) const;

  /// Adds c to the coefficient of q^{n/8}; silently drops n >= trunc().
  void add_term(int n, const Rational& c);

  /// Drops every index >= n; keeps trunc() when n is larger.
  QSeries truncated(int n) const;

  /// True when every stored index is a multiple of `step`.
  bool on_grid(int step) const;

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& other);
  QSeries& operator-=(const QSeries& other);
  QSeries& operator*=(const Rational& c);

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
  friend QSeries operator*(const Rational& c, QSeries a) { return a *= c; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);

  /// Exact equality of coefficients and truncation.
  friend bool operator==(const QSeries& a, const QSeries& b);

  /// First index below `upto` where the two series differ.
  std::optional<int> first_difference(const QSeries& other, int upto) const;

  std::string to_string() const;

 private:
  Coeffs coeffs_;
  int trunc_;
};

/// Truncation of a product: min(ta + mb, tb + ma).
int product_trunc(int ta, int ma, int tb, int mb);

QSeries inverse(const QSeries& f);
QSeries pow(const QSeries& f, unsigned n);

}  // namespace modanom
