#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "modanom/form_qseries.hpp"
#include "modanom/theta.hpp"

namespace modanom {

/// Formal geometry of a 4d-manifold with a line bundle ξ (and optionally η).
struct GeometrySpec {
  int d = 1;
  int k = 1;
  std::vector<long> a{1};
  std::vector<long> b{1};
  bool has_eta = false;
  int n8 = 64;
  int degree_cap = 0;  ///< 0 means 4d

  /// SpecError on inconsistent fields.
  void validate() const;
  RegistryPtr registry() const;
  /// {degree_cap or 4d, t-cap 2d}
  Caps caps() const;
  /// Σ_t (a_t² + 2 b_t²)
  long anomaly_weight() const;
};

Caps default_caps(int d);

/// ∏_j (x_j/2)/sinh(x_j/2) over the Chern roots of a standard registry.
FormPoly ahat_form(const RegistryPtr& reg, Caps caps);
FormPoly ahat_form(int d);
/// ∏_j x_j/tanh(x_j/2).
FormPoly lhat_form(const RegistryPtr& reg, Caps caps);
FormPoly lhat_form(int d);

/// Coefficients of (y/2)/sinh(y/2) and y/tanh(y/2) in y, through y^max_power,
/// from the Bernoulli closed forms.
std::vector<Rational> ahat_series(unsigned max_power);
std::vector<Rational> lhat_series(unsigned max_power);

/// e^{m·var} + e^{-m·var}, minus 2 when reduced.
FormPoly ch_line(long m, const std::string& var, bool reduced, const RegistryPtr& reg, Caps caps);
FormPoly ch_line(long m, const std::string& var, bool reduced, int d);
/// cosh(m·var/2).
FormPoly cosh_half(long m, const std::string& var, const RegistryPtr& reg, Caps caps);

/// p1(TM) - Σ_t(a_t²+2b_t²) p1(ξ) = Σ x_j² - (Σ a_t²+2b_t²) u².
FormPoly anomaly_p1(const GeometrySpec& spec, const RegistryPtr& reg, Caps caps);
/// Σ_t (ch of reduced ξ^{b_t}) - (ch of reduced ξ^{a_t}).
FormPoly ch_difference(const GeometrySpec& spec, const RegistryPtr& reg, Caps caps);

enum class WittenBundle { Theta1, Theta2, ThetaBar1, ThetaBar2 };
std::string to_string(WittenBundle w);

/// Chern character of the twisted Witten bundle, built factor by factor from
///   ch S_t(Ẽ) = ∏(1-t)/(1-t e^{ω}),  ch Λ_t(Ẽ - F̃) = ∏(1+t e^{ω})/(1+t) / ∏(1+t e^{ω'})/(1+t)
/// with E, F given by their Chern roots. No theta block is used.
FormQSeries witten_bundle_ch(WittenBundle which, const GeometrySpec& spec);

enum class QForm { Q1, Q2, Q3, QBar1, QBar2, QBar3, Phi1, Phi2, Phi3 };
std::string to_string(QForm f);
bool needs_eta(QForm f);

/// Assembled theta-product form (all degrees):
///   common = exp(E2·P/24)·∏_j B(x_j),  P = anomaly_p1
///   Q1 = 2^k common ∏ B1(a u)B3(b u)B2(b u)
///   Q2 = 2^k common ∏ B1(b u)B3(b u)B2(a u)
///   Q3 = 2^k common ∏ B1(b u)B2(b u)B3(a u)        (τ -> τ+1 image of Q2)
///   QBar1 = 2 common B1(au)B3(bu)B2(bu)·B1(η)^{-2}B3(η)B2(η)
///   QBar2 = 2 common B1(bu)B3(bu)B2(au)·B2(η)^{-2}B3(η)B1(η)
///   QBar3 = 2 common B1(bu)B3(au)B2(bu)·B3(η)^{-2}B1(η)B2(η)
/// Phi_i is QBar_i. eta_arg supplies the η root and fixes the caps when given.
FormQSeries q_form(QForm which, const GeometrySpec& spec, const std::optional<FormPoly>& eta_arg = std::nullopt);

/// Same form rebuilt from Â, the cosh prefactors and witten_bundle_ch
/// (only Q1, Q2, QBar1, QBar2 have a bundle description).
FormQSeries q_form_from_bundles(QForm which, const GeometrySpec& spec);

enum class CSForm { CSPhi1, CSPhi2, CSPhi3 };
std::string to_string(CSForm f);

/// Coefficients (c1, c2, c3) of Λ_i = c1 ℓ1 + c2 ℓ2 + c3 ℓ3.
std::array<int, 3> log_combination(CSForm f);

/// ∫_0^1 Φ_i(r_t)·α·Λ_i(r_t) dt, weight 4d-1 component, r_t = r0 + t·s.
/// Λ_1 = ℓ2+ℓ3-2ℓ1, Λ_2 = ℓ1+ℓ3-2ℓ2, Λ_3 = ℓ1+ℓ2-2ℓ3. Constant prefactors
/// are dropped. `alpha_scale` multiplies the α slot.
FormQSeries cs_form(CSForm which, const GeometrySpec& spec, const Rational& alpha_scale = 1);

/// r0 + t·s in the given caps.
FormPoly eta_family(const RegistryPtr& reg, Caps caps);

struct AgwProbe {
  int d = 3;
  Rational lambda;
  Rational mu;
  bool consistent = false;
  bool unique = false;
  FormPoly residual{Registry::univariate(), Caps{}};  ///< L̂ - λ Â ch(T_C M) - μ Â, top weight
};

/// Solves {L̂}^{(4d)} = λ{Â ch(T_C M)}^{(4d)} + μ{Â}^{(4d)} exactly over the
/// top-weight monomials.
AgwProbe agw_probe(int d);

}  // namespace modanom
