#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "modanom/charforms.hpp"
#include "modanom/modular_group.hpp"
#include "modanom/numeric.hpp"
#include "modanom/theta.hpp"

namespace modanom {

enum class Status { Pass, Fail, Flagged, Error };
std::string to_string(Status s);
Status parse_status(const std::string& s);

struct CheckResult {
  std::string id;
  std::string anchor;  ///< short label of the statement being checked
  Status status = Status::Pass;
  std::optional<int> exact_residual_order;
  std::optional<double> numeric_max_error;
  nlohmann::json extracted;  ///< null when there is no payload
  std::string message;

  bool operator==(const CheckResult&) const = default;
};

/// Sample points and tolerance for numeric checks.
struct NumericOptions {
  std::vector<Complex> taus{{0.0, 1.0}, {0.11, 1.03}, {-0.37, 1.21}};
  double tol = 1e-8;
  /// Test hook: perturbs δ2 (and hence ε2-free bases built from it).
  bool corrupt_delta2 = false;
};

/// "x1^2*u" -> "p/q" map; the unit monomial is "1".
nlohmann::json poly_to_json(const FormPoly& p);
FormPoly poly_from_json(const nlohmann::json& j, const RegistryPtr& reg, Caps caps);

/// δ_i, ε_i honoring the corrupt_delta2 hook.
ModularPair basis_pair(int i, int n8, const NumericOptions& opts);

enum class Flavor { Delta2Eps2, Delta1Eps1 };

struct Decomposition {
  std::vector<FormPoly> h;
  FormQSeries residual;
  /// Rows used: every q-index below this was matched.
  int rows = 0;
};

/// Solves F = Σ_r h_r (8δ)^{d-2r} ε^r, r = 0..⌊d/2⌋, for form-valued h_r by
/// exact elimination over the q-index rows; ShapeError unless F is
/// homogeneous.
Decomposition decompose_gamma_basis(const FormQSeries& f, int d, const ModularPair& basis);
Decomposition decompose_gamma_basis(const FormQSeries& f, int d, Flavor flavor, int n8);
/// (8δ)^{d-2r} ε^r
QSeries gamma_basis_element(const ModularPair& basis, int d, int r);

/// {e^{P/24}·prefactor·Â·ch(α_r)}^{(4d)} with the predicted α_0, α_1.
FormPoly predicted_h(const GeometrySpec& spec, int r, bool with_eta);

CheckResult check_theorem_3_1(const GeometrySpec& spec, const NumericOptions& opts = {});
CheckResult check_theorem_4_1(const GeometrySpec& spec, const NumericOptions& opts = {});

enum class Corollary { C32, C33Formula, C34, C42, C43 };
std::string to_string(Corollary c);
CheckResult check_corollary(Corollary c, const GeometrySpec& spec);

/// Both sides of a displayed corollary identity, for inspection.
struct CorollarySides {
  FormPoly lhs;
  FormPoly rhs;
};
CorollarySides corollary_sides(Corollary c, const GeometrySpec& spec);

enum class SPair { Q, QBar, CS };
std::string to_string(SPair p);
CheckResult check_s_relation(SPair pair, const GeometrySpec& spec, const NumericOptions& opts = {});
/// F1(-1/τ) = τ^w F2(τ) per monomial, for arbitrary top components.
CheckResult check_s_relation(const FormQSeries& f1, const FormQSeries& f2, int weight, const NumericOptions& opts = {});

/// Forms related by S (1 <-> 2, 3 <-> 3) and T (1 -> 1, 2 <-> 3).
enum class FamilyKind { Delta, Epsilon, Q, QBar, CS };
std::string to_string(FamilyKind f);

struct Family {
  FamilyKind kind;
  int weight;
  std::array<FormQSeries, 3> member;  ///< top components
};

Family build_family(FamilyKind kind, const GeometrySpec& spec, const NumericOptions& opts = {});

/// Numeric modularity of member `index` (1..3) over `group`: every
/// generator is expanded into S and T steps; T steps use the exact
/// τ -> τ+1 image, S steps the family partner (each S relation used is
/// itself checked at the samples). A constant multiplier of modulus one
/// other than 1 is reported and flags the check.
CheckResult check_modularity(const Family& family, int index, Group group, const NumericOptions& opts);
CheckResult check_modularity(FamilyKind kind, int index, Group group, const GeometrySpec& spec,
                             const NumericOptions& opts = {});

CheckResult check_theorem_5_1(const GeometrySpec& spec, const NumericOptions& opts = {});

/// Theta laws, E2, δ/ε laws and expansions, Jacobi identity, and
/// modularity of δ_i, ε_i.
std::vector<CheckResult> check_foundations(int n8, const NumericOptions& opts = {});

/// Solves the gravitational-anomaly coefficients and compares with (1, -32).
CheckResult check_agw(int d = 3);

}  // namespace modanom
