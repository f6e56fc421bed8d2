#pragma once

#include <complex>
#include <variant>

#include "modanom/qseries.hpp"

namespace modanom {

using Complex = std::complex<double>;

/// A truncated sum together with the information needed to bound its tail.
struct Evaluation {
  Complex value;
  int trunc = 0;           ///< first unknown q^{1/8}-index
  double max_coeff = 0;    ///< max |coefficient| over stored terms
  double radius = 0;       ///< |e^{2πiτ/8}|
  double tail_bound = 0;   ///< max_coeff · radius^trunc / (1 - radius)
};

/// Σ_n c_n e^{2πiτn/8}; DomainError unless Im τ > 0.
Evaluation evaluate(const QSeries& f, Complex tau);

/// τ -> τ+1 applied to a series off the q^{1/2} grid: coefficient n carries
/// the phase e^{2πin/8}. Numeric use only.
class PhasedQSeries {
 public:
  explicit PhasedQSeries(QSeries base) : base_(std::move(base)) {}
  const QSeries& base() const { return base_; }
  /// Equals evaluate(base, τ + 1).
  Evaluation evaluate(Complex tau) const;

 private:
  QSeries base_;
};

/// Exact result (a QSeries) when every index is ≡ 0 mod 4, phase-tagged otherwise.
std::variant<QSeries, PhasedQSeries> t_action(const QSeries& f);

inline constexpr double kPi = 3.14159265358979323846;
inline const Complex kI{0.0, 1.0};

/// Möbius action of an integer matrix.
Complex mobius(long a, long b, long c, long d, Complex tau);

}  // namespace modanom
