#include "modanom/numeric.hpp"

#include <cmath>

#include "modanom/errors.hpp"

namespace modanom {

namespace {

Evaluation evaluate_phased(const QSeries& f, Complex tau, bool shifted) {
  if (!(tau.imag() > 0)) throw DomainError("evaluation needs Im(tau) > 0");
  Evaluation ev;
  ev.trunc = f.trunc();
  ev.radius = std::exp(-2 * kPi * tau.imag() / kGridPerUnit);
  const Complex step = 2 * kPi * kI * (shifted ? tau + 1.0 : tau) / double(kGridPerUnit);
  for (const auto& [n, c] : f.coeffs()) {
    const double cd = to_double(c);
    ev.max_coeff = std::max(ev.max_coeff, std::abs(cd));
    ev.value += cd * std::exp(step * double(n));
  }
  ev.tail_bound = ev.max_coeff * std::pow(ev.radius, ev.trunc) / (1 - ev.radius);
  return ev;
}

}  // namespace

Evaluation evaluate(const QSeries& f, Complex tau) { return evaluate_phased(f, tau, false); }

Evaluation PhasedQSeries::evaluate(Complex tau) const { return evaluate_phased(base_, tau, true); }

std::variant<QSeries, PhasedQSeries> t_action(const QSeries& f) {
  if (!f.on_grid(kHalfStep)) return PhasedQSeries(f);
  QSeries out(f.trunc());
  for (const auto& [n, c] : f.coeffs()) out.add_term(n, (n / kHalfStep) % 2 == 0 ? c : Rational(-c));
  return out;
}

Complex mobius(long a, long b, long c, long d, Complex tau) {
  return (double(a) * tau + double(b)) / (double(c) * tau + double(d));
}

}  // namespace modanom
