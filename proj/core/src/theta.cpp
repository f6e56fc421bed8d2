#include "modanom/theta.hpp"

#include <cmath>

#include "modanom/errors.hpp"

namespace modanom {

std::string to_string(ThetaKind k) {
  switch (k) {
    case ThetaKind::Theta:
      return "theta";
    case ThetaKind::Theta1:
      return "theta1";
    case ThetaKind::Theta2:
      return "theta2";
    case ThetaKind::Theta3:
      return "theta3";
  }
  return "?";
}

int product_factors(int n8) { return n8 / kGridPerUnit + 1; }

namespace {

// 1 + sign·q^{index/8}
QSeries binomial(int index, int sign, int n8) {
  QSeries s = QSeries::constant(1, n8);
  s.add_term(index, sign);
  return s;
}

// ∏_{n=1}^{N} (1 - q^n)
QSeries euler_product(int n8) {
  QSeries acc = QSeries::constant(1, n8);
  for (int n = 1; n <= product_factors(n8); ++n) acc = acc * binomial(kGridPerUnit * n, -1, n8);
  return acc;
}

int full_index(int n) { return kGridPerUnit * n; }
int half_index(int n) { return kGridPerUnit * n - kHalfStep; }

}  // namespace

QSeries theta_null(ThetaKind kind, int n8) {
  QSeries acc = euler_product(n8);
  const int nf = product_factors(n8);
  switch (kind) {
    case ThetaKind::Theta:
      throw ZeroFunction("theta(0, tau) vanishes identically; use theta_prime_null");
    case ThetaKind::Theta1: {
      for (int n = 1; n <= nf; ++n) {
        const QSeries f = binomial(full_index(n), +1, n8);
        acc = acc * f * f;
      }
      return QSeries::monomial(1, 2, n8) * acc;
    }
    case ThetaKind::Theta2:
    case ThetaKind::Theta3: {
      const int sign = kind == ThetaKind::Theta2 ? -1 : +1;
      for (int n = 1; n <= nf; ++n) {
        const QSeries f = binomial(half_index(n), sign, n8);
        acc = acc * f * f;
      }
      return acc;
    }
  }
  return acc;
}

QSeries theta_prime_null(int n8) {
  const QSeries e = euler_product(n8);
  return QSeries::monomial(1, 2, n8) * (e * e * e);
}

bool jacobi_holds(const QSeries& prime_over_pi, const QSeries& th1, const QSeries& th2, const QSeries& th3) {
  const QSeries rhs = th1 * th2 * th3;
  const int upto = std::min(prime_over_pi.trunc(), rhs.trunc());
  return !prime_over_pi.first_difference(rhs, upto).has_value();
}

bool jacobi_check(int n8) {
  return jacobi_holds(theta_prime_null(n8), theta_null(ThetaKind::Theta1, n8), theta_null(ThetaKind::Theta2, n8),
                      theta_null(ThetaKind::Theta3, n8));
}

QSeries eisenstein_e2(int n8) {
  QSeries e2 = QSeries::constant(1, n8);
  for (int n = 1; full_index(n) < n8; ++n) {
    long sigma = 0;
    for (int k = 1; k <= n; ++k)
      if (n % k == 0) sigma += k;
    e2.add_term(full_index(n), Rational(-24 * sigma));
  }
  return e2;
}

ModularPair delta_eps(int i, int n8) {
  const QSeries t1 = pow(theta_null(ThetaKind::Theta1, n8), 4);
  const QSeries t2 = pow(theta_null(ThetaKind::Theta2, n8), 4);
  const QSeries t3 = pow(theta_null(ThetaKind::Theta3, n8), 4);
  const Rational eighth(1, 8);
  const Rational sixteenth(1, 16);
  switch (i) {
    case 1:
      return {(t2 + t3) * eighth, t2 * t3 * sixteenth, Group::Gamma0_2};
    case 2:
      return {-(t1 + t3) * eighth, t1 * t3 * sixteenth, Group::GammaU0_2};
    case 3:
      return {(t1 - t2) * eighth, -(t1 * t2) * sixteenth, Group::GammaTheta};
    default:
      throw SpecError("delta_eps index must be 1, 2 or 3");
  }
}

namespace {

struct BlockAlgebra {
  RegistryPtr reg = Registry::univariate();
  Caps caps;
  int n8;
  FormPoly e_plus;   // e^y
  FormPoly e_minus;  // e^{-y}

  BlockAlgebra(int degree_cap, int trunc)
      : caps{degree_cap, 0},
        n8(trunc),
        e_plus(exp(FormPoly::variable(reg, caps, "y"))),
        e_minus(exp(FormPoly::variable(reg, caps, "y", -1))) {}

  FormQSeries one() const { return FormQSeries::constant(reg, caps, n8, 1); }

  // 1 + sign·q^{index/8}·poly
  FormQSeries factor(int index, int sign, const FormPoly& poly) const {
    FormQSeries f = one();
    f.add_term(index, poly * Rational(sign));
    return f;
  }

  // Σ_j c_j (y/2)^{2j+parity} / (2j+parity)!, i.e. cosh(y/2) or sinh(y/2).
  FormPoly half_hyperbolic(bool odd) const {
    FormPoly out(reg, caps);
    for (int j = odd ? 1 : 0; 2 * j <= caps.degree; j += 2) {
      Monomial m;
      m[0] = static_cast<std::uint8_t>(j);
      Rational c = 1 / factorial(j);
      mpz_class p2;
      mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(j));
      out.add_term(m, c / Rational(p2));
    }
    return out;
  }

  // sinh(y/2)/(y/2)
  FormPoly sinhc_half() const {
    FormPoly out(reg, caps);
    for (int j = 0; 2 * j <= caps.degree; j += 2) {
      Monomial m;
      m[0] = static_cast<std::uint8_t>(j);
      mpz_class p2;
      mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(j));
      out.add_term(m, 1 / (factorial(j + 1) * Rational(p2)));
    }
    return out;
  }

  // (x e^{±y}) / (1 + sign·x e^{±y}) with x = q^{index/8}, expanded in q.
  FormQSeries fraction(int index, int sign, const FormPoly& e) const {
    FormQSeries numerator = FormQSeries::from_poly(e, n8, index);
    return numerator * inverse(factor(index, sign, e));
  }
};

}  // namespace

FormQSeries block_series(ThetaKind kind, int n8, int degree_cap) {
  const BlockAlgebra alg(degree_cap, n8);
  const int nf = product_factors(n8);
  const FormPoly unit = FormPoly::constant(alg.reg, alg.caps, 1);
  FormQSeries numerator = alg.one();
  FormQSeries denominator = alg.one();
  switch (kind) {
    case ThetaKind::Theta: {
      for (int n = 1; n <= nf; ++n) {
        const FormQSeries euler = alg.factor(full_index(n), -1, unit);
        numerator = numerator * euler * euler;
        denominator = denominator * alg.factor(full_index(n), -1, alg.e_plus) * alg.factor(full_index(n), -1, alg.e_minus);
      }
      numerator = numerator * inverse(alg.sinhc_half());
      break;
    }
    case ThetaKind::Theta1: {
      for (int n = 1; n <= nf; ++n) {
        const FormQSeries plain = alg.factor(full_index(n), +1, unit);
        numerator = numerator * alg.factor(full_index(n), +1, alg.e_plus) * alg.factor(full_index(n), +1, alg.e_minus);
        denominator = denominator * plain * plain;
      }
      numerator = numerator * alg.half_hyperbolic(false);
      break;
    }
    case ThetaKind::Theta2:
    case ThetaKind::Theta3: {
      const int sign = kind == ThetaKind::Theta2 ? -1 : +1;
      for (int n = 1; n <= nf; ++n) {
        const FormQSeries plain = alg.factor(half_index(n), sign, unit);
        numerator = numerator * alg.factor(half_index(n), sign, alg.e_plus) * alg.factor(half_index(n), sign, alg.e_minus);
        denominator = denominator * plain * plain;
      }
      break;
    }
  }
  return numerator * inverse(denominator);
}

FormQSeries log_block_series(ThetaKind kind, int n8, int degree_cap) {
  const BlockAlgebra alg(degree_cap, n8);
  const int nf = product_factors(n8);
  FormQSeries acc(alg.reg, alg.caps, n8);
  switch (kind) {
    case ThetaKind::Theta:
      throw SpecError("log blocks are defined for theta1..theta3 only");
    case ThetaKind::Theta1: {
      // (1/2)tanh(y/2)
      const FormPoly tanh_half = alg.half_hyperbolic(true) * inverse(alg.half_hyperbolic(false)) * Rational(1, 2);
      acc += FormQSeries::from_poly(tanh_half, n8);
      for (int n = 1; n <= nf; ++n) {
        acc += alg.fraction(full_index(n), +1, alg.e_plus);
        acc -= alg.fraction(full_index(n), +1, alg.e_minus);
      }
      break;
    }
    case ThetaKind::Theta2: {
      for (int n = 1; n <= nf; ++n) {
        acc -= alg.fraction(half_index(n), -1, alg.e_plus);
        acc += alg.fraction(half_index(n), -1, alg.e_minus);
      }
      break;
    }
    case ThetaKind::Theta3: {
      for (int n = 1; n <= nf; ++n) {
        acc += alg.fraction(half_index(n), +1, alg.e_plus);
        acc -= alg.fraction(half_index(n), +1, alg.e_minus);
      }
      break;
    }
  }
  return acc;
}

int block_cap_for(const FormPoly& arg) {
  const int w = std::max(1, arg.min_weight());
  return 2 * (arg.caps().degree / w);
}

namespace {

void require_even_nilpotent(const FormPoly& arg) {
  if (sgn(arg.constant_term()) != 0) throw NotNilpotent("theta block argument has a weight-0 part");
  for (const auto& [m, c] : arg.terms())
    for (std::size_t i = 0; i < arg.registry()->size(); ++i)
      if (m[i] != 0 && arg.registry()->var(i).kind == VarKind::Odd)
        throw StructuralError("theta block argument must be even");
}

}  // namespace

FormQSeries theta_block(ThetaKind kind, const FormPoly& arg, int n8) {
  require_even_nilpotent(arg);
  return compose(block_series(kind, n8, block_cap_for(arg)), arg);
}

FormQSeries theta_log_block(ThetaKind kind, const FormPoly& arg, int n8) {
  require_even_nilpotent(arg);
  return compose(log_block_series(kind, n8, block_cap_for(arg)), arg);
}

Complex numeric_theta(ThetaKind kind, Complex v, Complex tau, int nmax) {
  if (!(tau.imag() > 0)) throw DomainError("numeric_theta needs Im(tau) > 0");
  const Complex q = std::exp(2 * kPi * kI * tau);
  const Complex q8 = std::exp(2 * kPi * kI * tau / 8.0);
  const Complex ep = std::exp(2 * kPi * kI * v);
  const Complex em = std::exp(-2 * kPi * kI * v);
  const Complex qh = std::exp(kPi * kI * tau);  // q^{1/2}
  Complex acc = 1;
  Complex qn = 1;
  for (int n = 1; n <= nmax; ++n) {
    const Complex prev = qn;
    qn *= q;
    const Complex qhalf = prev * qh;  // q^{n-1/2}
    switch (kind) {
      case ThetaKind::Theta:
        acc *= (1.0 - qn) * (1.0 - ep * qn) * (1.0 - em * qn);
        break;
      case ThetaKind::Theta1:
        acc *= (1.0 - qn) * (1.0 + ep * qn) * (1.0 + em * qn);
        break;
      case ThetaKind::Theta2:
        acc *= (1.0 - qn) * (1.0 - ep * qhalf) * (1.0 - em * qhalf);
        break;
      case ThetaKind::Theta3:
        acc *= (1.0 - qn) * (1.0 + ep * qhalf) * (1.0 + em * qhalf);
        break;
    }
  }
  switch (kind) {
    case ThetaKind::Theta:
      return 2.0 * q8 * std::sin(kPi * v) * acc;
    case ThetaKind::Theta1:
      return 2.0 * q8 * std::cos(kPi * v) * acc;
    default:
      return acc;
  }
}

Complex numeric_theta_log_derivative(ThetaKind kind, Complex v, Complex tau, int nmax) {
  if (!(tau.imag() > 0)) throw DomainError("numeric_theta_log_derivative needs Im(tau) > 0");
  const Complex q = std::exp(2 * kPi * kI * tau);
  const Complex qh = std::exp(kPi * kI * tau);
  const Complex ep = std::exp(2 * kPi * kI * v);
  const Complex em = std::exp(-2 * kPi * kI * v);
  const Complex tpi = 2 * kPi * kI;
  Complex acc = 0;
  switch (kind) {
    case ThetaKind::Theta:
      acc = kPi * std::cos(kPi * v) / std::sin(kPi * v);
      break;
    case ThetaKind::Theta1:
      acc = -kPi * std::sin(kPi * v) / std::cos(kPi * v);
      break;
    default:
      break;
  }
  Complex qn = 1;
  for (int n = 1; n <= nmax; ++n) {
    const Complex prev = qn;
    qn *= q;
    const Complex x = (kind == ThetaKind::Theta || kind == ThetaKind::Theta1) ? qn : prev * qh;
    const double sign = (kind == ThetaKind::Theta || kind == ThetaKind::Theta2) ? -1.0 : 1.0;
    // d/dv log(1 + sign·x e^{±2πiv}) = ±2πi·sign·x e^{±2πiv} / (1 + sign·x e^{±2πiv})
    acc += tpi * sign * x * ep / (1.0 + sign * x * ep);
    acc -= tpi * sign * x * em / (1.0 + sign * x * em);
  }
  return acc;
}

}  // namespace modanom
