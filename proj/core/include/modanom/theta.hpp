#pragma once

#include "modanom/form_qseries.hpp"
#include "modanom/modular_group.hpp"
#include "modanom/numeric.hpp"
#include "modanom/qseries.hpp"

namespace modanom {

/// θ, θ1, θ2, θ3 in the product normalization used throughout:
///   θ(v,τ)  = 2q^{1/8} sin(πv) ∏(1-q^j)(1-e^{2πiv}q^j)(1-e^{-2πiv}q^j)
///   θ1(v,τ) = 2q^{1/8} cos(πv) ∏(1-q^j)(1+e^{2πiv}q^j)(1+e^{-2πiv}q^j)
///   θ2(v,τ) = ∏(1-q^j)(1-e^{2πiv}q^{j-1/2})(1-e^{-2πiv}q^{j-1/2})
///   θ3(v,τ) = ∏(1-q^j)(1+e^{2πiv}q^{j-1/2})(1+e^{-2πiv}q^{j-1/2})
enum class ThetaKind { Theta, Theta1, Theta2, Theta3 };

std::string to_string(ThetaKind k);

/// Number of product factors needed so that the neglected ones cannot touch
/// indices below n8.
int product_factors(int n8);

/// θ_k(0,τ) through index n8; ZeroFunction for ThetaKind::Theta.
QSeries theta_null(ThetaKind kind, int n8);

/// θ'(0,τ)/π = 2q^{1/8}∏(1-q^n)^3.
QSeries theta_prime_null(int n8);

/// θ'(0,τ)/π == θ1(0,τ)θ2(0,τ)θ3(0,τ) below n8.
bool jacobi_check(int n8);
bool jacobi_holds(const QSeries& prime_over_pi, const QSeries& th1, const QSeries& th2, const QSeries& th3);

/// E2 = 1 - 24 Σ σ1(n) q^n through index n8 (integer powers only).
QSeries eisenstein_e2(int n8);

struct ModularPair {
  QSeries delta;
  QSeries epsilon;
  Group group;
  int delta_weight = 2;
  int epsilon_weight = 4;
};

/// δ_i, ε_i for i in {1,2,3} built from fourth powers of theta nulls.
ModularPair delta_eps(int i, int n8);

/// One-variable blocks over Registry::univariate(), y of weight 2:
///   Theta:  (y/2)/sinh(y/2) ∏(1-q^n)^2 / ((1-q^n e^y)(1-q^n e^{-y}))
///   Theta1: cosh(y/2) ∏(1+q^n e^y)(1+q^n e^{-y}) / (1+q^n)^2
///   Theta2: ∏(1-q^{n-1/2}e^y)(1-q^{n-1/2}e^{-y}) / (1-q^{n-1/2})^2
///   Theta3: ∏(1+q^{n-1/2}e^y)(1+q^{n-1/2}e^{-y}) / (1+q^{n-1/2})^2
/// These are θ-quotients evaluated at v = y/(2π√-1); see theta_block.
FormQSeries block_series(ThetaKind kind, int n8, int degree_cap);

/// d/dy log of block_series for Theta1..Theta3, from the sum formula.
FormQSeries log_block_series(ThetaKind kind, int n8, int degree_cap);

/// x·θ'(0,τ)/θ(x,τ) (Theta) or θ_k(x,τ)/θ_k(0,τ) (Theta1..3) with the
/// argument rescaled by 1/(2π√-1), which makes every coefficient rational.
/// arg must be an even form without constant term (NotNilpotent otherwise).
FormQSeries theta_block(ThetaKind kind, const FormPoly& arg, int n8);

/// Normalized logarithmic derivative of theta_block(kind, ·) at arg.
FormQSeries theta_log_block(ThetaKind kind, const FormPoly& arg, int n8);

/// Degree cap a one-variable block needs before substituting arg.
int block_cap_for(const FormPoly& arg);

/// Literal product evaluation of θ_k(v, τ) with nmax factors.
Complex numeric_theta(ThetaKind kind, Complex v, Complex tau, int nmax = 60);

/// ∂_v log θ_k(v, τ) from the logarithmic derivative of the product.
Complex numeric_theta_log_derivative(ThetaKind kind, Complex v, Complex tau, int nmax = 60);

}  // namespace modanom
