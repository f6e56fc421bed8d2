#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace modanom {

enum class VarKind : std::uint8_t {
  Even,       // commuting generator of positive even weight
  Odd,        // square-zero generator, commutes with everything
  Parameter,  // weight 0, degree bounded by the t-cap
};

struct Variable {
  std::string name;
  int weight;
  VarKind kind;
};

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector over a registry. Index i refers to registry variable i.
class Monomial {
 public:
  Monomial() { exps_.fill(0); }

  std::uint8_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint8_t& operator[](std::size_t i) { return exps_[i]; }

  bool is_one() const;
  Monomial operator+(const Monomial& other) const;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::array<std::uint8_t, kMaxVars> exps_;
};

/// Ordered, immutable set of formal variables shared by forms that may be
/// combined. Registries compare by content.
class Registry {
 public:
  explicit Registry(std::vector<Variable> vars);

  /// x_1..x_{2d} (Chern roots of TM), u (line bundle), vbar (eta), r0 and s
  /// (curvature family of eta), alpha (odd connection difference), t.
  static std::shared_ptr<const Registry> standard(int d);
  /// A single even variable y of weight 2; carrier for one-variable blocks.
  static std::shared_ptr<const Registry> univariate();

  std::size_t size() const { return vars_.size(); }
  const Variable& var(std::size_t i) const { return vars_[i]; }
  const std::vector<Variable>& vars() const { return vars_; }

  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index(const std::string& name) const;

  int weight(const Monomial& m) const;
  /// Total exponent of Parameter variables.
  int param_degree(const Monomial& m) const;
  /// False when an odd variable appears squared.
  bool admissible(const Monomial& m) const;

  std::string format(const Monomial& m) const;
  /// Inverse of format(); "1" is the unit monomial.
  Monomial parse(const std::string& text) const;

  /// Indices of x_1..x_{2d} in a standard registry (empty otherwise).
  std::vector<std::size_t> chern_roots() const;
  int standard_d() const { return standard_d_; }

  bool operator==(const Registry& other) const;

 private:
  std::vector<Variable> vars_;
  int standard_d_ = 0;
};

using RegistryPtr = std::shared_ptr<const Registry>;

bool same_registry(const RegistryPtr& a, const RegistryPtr& b);

}  // namespace modanom
