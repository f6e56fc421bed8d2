#pragma once

#include <map>
#include <optional>
#include <string>

#include "modanom/form_poly.hpp"
#include "modanom/qseries.hpp"

namespace modanom {

/// A FormPoly-valued truncated q-series.
///
/// Stored q-major (index -> FormPoly coefficient); by_monomial() gives the
/// equivalent monomial -> QSeries view. Every coefficient shares the registry
/// and caps of the series.
class FormQSeries {
 public:
  using Terms = std::map<int, FormPoly>;

  FormQSeries(RegistryPtr reg, Caps caps, int trunc);

  static FormQSeries constant(RegistryPtr reg, Caps caps, int trunc, const Rational& c);
  /// poly · q^{index/8}
  static FormQSeries from_poly(const FormPoly& poly, int trunc, int index = 0);
  /// series ⊗ poly
  static FormQSeries from_series(const QSeries& series, const FormPoly& poly);

  const RegistryPtr& registry() const { return reg_; }
  const Caps& caps() const { return caps_; }
  int trunc() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Smallest stored q-index, or trunc() when zero.
  int min_index() const;
  FormPoly coeff(int index) const;
  Rational cell(const Monomial& m, int index) const;

  void add_term(int index, const FormPoly& poly);

  std::map<Monomial, QSeries> by_monomial() const;
  static FormQSeries from_monomials(RegistryPtr reg, Caps caps, int trunc,
                                    const std::map<Monomial, QSeries>& cells);

  /// Monomials of total weight w only.
  FormQSeries component(int w) const;
  FormQSeries integrate_t() const;
  FormQSeries derivative(std::size_t var) const;
  FormQSeries truncated(int trunc) const;
  FormQSeries with_caps(Caps caps) const;
  bool on_grid(int step) const;

  /// Coefficient at (q^0, unit monomial).
  Rational unit_part() const;

  FormQSeries operator-() const;
  FormQSeries& operator+=(const FormQSeries& other);
  FormQSeries& operator-=(const FormQSeries& other);
  FormQSeries& operator*=(const Rational& c);

  friend FormQSeries operator+(FormQSeries a, const FormQSeries& b) { return a += b; }
  friend FormQSeries operator-(FormQSeries a, const FormQSeries& b) { return a -= b; }
  friend FormQSeries operator*(FormQSeries a, const Rational& c) { return a *= c; }
  friend FormQSeries operator*(const Rational& c, FormQSeries a) { return a *= c; }
  friend FormQSeries operator*(const FormQSeries& a, const FormQSeries& b);
  friend FormQSeries operator*(const FormQSeries& a, const FormPoly& b);

  friend bool operator==(const FormQSeries& a, const FormQSeries& b);

  /// First q-index below min(truncs) at which the two series differ.
  std::optional<int> first_difference(const FormQSeries& other) const;

  std::string to_string() const;

 private:
  void check_compatible(const FormQSeries& other) const;

  RegistryPtr reg_;
  Caps caps_;
  int trunc_;
  Terms terms_;
};

FormQSeries pow(const FormQSeries& f, unsigned n);
/// Two-sided inverse up to truncation; NotInvertible unless unit_part() != 0.
FormQSeries inverse(const FormQSeries& f);
/// exp(f) for unit_part() == 0; NotNilpotent otherwise.
FormQSeries exp(const FormQSeries& f);

/// Substitutes arg for the single variable of a series over
/// Registry::univariate(). arg must have zero constant term.
FormQSeries compose(const FormQSeries& univariate, const FormPoly& arg);

/// The tau -> tau+1 action on a q^{1/2}-grid series (signs (-1)^{n/4}).
/// Throws StructuralError if some index is off the q^{1/2} grid.
FormQSeries t_action_exact(const FormQSeries& f);

}  // namespace modanom
