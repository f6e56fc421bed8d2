#include "modanom/rational.hpp"

#include <stdexcept>
#include <string>

namespace modanom {

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + std::string(text));
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  r.canonicalize();
  return r;
}

double to_double(const Rational& r) { return r.get_d(); }

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

std::vector<Rational> bernoulli_numbers(unsigned n) {
  // Σ_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1.
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    Rational acc = 0;
    mpz_class binom = 1;  // C(m+1, 0)
    for (unsigned k = 0; k < m; ++k) {
      acc += Rational(binom) * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -acc / Rational(m + 1);
  }
  return b;
}

}  // namespace modanom
