#pragma once

#include <functional>
#include <map>
#include <string>

#include "modanom/rational.hpp"
#include "modanom/registry.hpp"

namespace modanom {

/// Truncation bounds shared by every operand of an arithmetic operation.
struct Caps {
  int degree = 4;  ///< monomials of weight > degree are discarded
  int t = 2;       ///< maximum total degree in parameter variables

  bool operator==(const Caps&) const = default;
};

/// Truncated graded-commutative polynomial in the variables of a registry.
class FormPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  FormPoly(RegistryPtr reg, Caps caps);

  static FormPoly constant(RegistryPtr reg, Caps caps, const Rational& c);
  static FormPoly variable(RegistryPtr reg, Caps caps, const std::string& name,
                           const Rational& c = 1);
  static FormPoly monomial(RegistryPtr reg, Caps caps, const Monomial& m, const Rational& c);

  const RegistryPtr& registry() const { return reg_; }
  const Caps& caps() const { return caps_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Monomial& m) const;
  Rational constant_term() const;
  /// Adds c·m unless m violates the caps or squares an odd variable.
  void add_term(const Monomial& m, const Rational& c);

  /// Retains the monomials of total weight w.
  FormPoly component(int w) const;
  /// Replaces t^m by 1/(m+1) for the parameter named "t".
  FormPoly integrate_t() const;
  /// Formal partial derivative in an even variable.
  FormPoly derivative(std::size_t var) const;
  /// Re-truncates at smaller caps (larger caps are rejected).
  FormPoly with_caps(Caps caps) const;
  /// Substitutes `value` for variable `var`; value lives in the same registry.
  FormPoly substitute(std::size_t var, const FormPoly& value) const;
  /// Maps every coefficient through f (zeros dropped).
  FormPoly map_coeffs(const std::function<Rational(const Monomial&, const Rational&)>& f) const;
  /// Smallest weight of a stored monomial, or degree cap + 1 if zero.
  int min_weight() const;
  bool is_homogeneous(int w) const;

  FormPoly operator-() const;
  FormPoly& operator+=(const FormPoly& other);
  FormPoly& operator-=(const FormPoly& other);
  FormPoly& operator*=(const Rational& c);
  FormPoly& operator*=(const FormPoly& other);

  friend FormPoly operator+(FormPoly a, const FormPoly& b) { return a += b; }
  friend FormPoly operator-(FormPoly a, const FormPoly& b) { return a -= b; }
  friend FormPoly operator*(FormPoly a, const Rational& c) { return a *= c; }
  friend FormPoly operator*(const Rational& c, FormPoly a) { return a *= c; }
  friend FormPoly operator*(const FormPoly& a, const FormPoly& b);

  /// Equality of registry, caps and coefficients.
  friend bool operator==(const FormPoly& a, const FormPoly& b);

  std::string to_string() const;

  /// Accumulates a·b into this, skipping products that violate the caps.
  void add_product(const FormPoly& a, const FormPoly& b);

 private:
  void check_compatible(const FormPoly& other) const;

  RegistryPtr reg_;
  Caps caps_;
  Terms terms_;
};

FormPoly pow(const FormPoly& f, unsigned n);
/// Inverse of a unit (nonzero constant term); NotInvertible otherwise.
FormPoly inverse(const FormPoly& f);
/// exp(f) for f with zero constant term; NotNilpotent otherwise.
FormPoly exp(const FormPoly& f);
/// Σ_j coeffs[j]·arg^j.
FormPoly evaluate_series(const std::vector<Rational>& coeffs, const FormPoly& arg);

}  // namespace modanom
