#include "modanom/registry.hpp"

#include <sstream>

#include "modanom/errors.hpp"

namespace modanom {

bool Monomial::is_one() const {
  for (auto e : exps_)
    if (e != 0) return false;
  return true;
}

Monomial Monomial::operator+(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) out.exps_[i] = static_cast<std::uint8_t>(exps_[i] + other.exps_[i]);
  return out;
}

Registry::Registry(std::vector<Variable> vars) : vars_(std::move(vars)) {
  if (vars_.size() > kMaxVars) throw StructuralError("registry exceeds " + std::to_string(kMaxVars) + " variables");
  for (const auto& v : vars_) {
    if (v.kind == VarKind::Parameter && v.weight != 0) throw StructuralError("parameter " + v.name + " must have weight 0");
    if (v.kind != VarKind::Parameter && v.weight <= 0) throw StructuralError("variable " + v.name + " needs positive weight");
  }
}

std::shared_ptr<const Registry> Registry::standard(int d) {
  if (d <= 0) throw SpecError("dimension parameter d must be positive");
  std::vector<Variable> vars;
  for (int j = 1; j <= 2 * d; ++j) vars.push_back({"x" + std::to_string(j), 2, VarKind::Even});
  vars.push_back({"u", 2, VarKind::Even});
  vars.push_back({"vbar", 2, VarKind::Even});
  vars.push_back({"r0", 2, VarKind::Even});
  vars.push_back({"s", 2, VarKind::Even});
  vars.push_back({"alpha", 1, VarKind::Odd});
  vars.push_back({"t", 0, VarKind::Parameter});
  auto reg = std::make_shared<Registry>(std::move(vars));
  reg->standard_d_ = d;
  return reg;
}

std::shared_ptr<const Registry> Registry::univariate() {
  static const auto reg = std::make_shared<const Registry>(std::vector<Variable>{{"y", 2, VarKind::Even}});
  return reg;
}

std::optional<std::size_t> Registry::find(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Registry::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw StructuralError("unknown variable " + name);
  return *i;
}

int Registry::weight(const Monomial& m) const {
  int w = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) w += vars_[i].weight * m[i];
  return w;
}

int Registry::param_degree(const Monomial& m) const {
  int deg = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].kind == VarKind::Parameter) deg += m[i];
  return deg;
}

bool Registry::admissible(const Monomial& m) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].kind == VarKind::Odd && m[i] > 1) return false;
  for (std::size_t i = vars_.size(); i < kMaxVars; ++i)
    if (m[i] != 0) return false;
  return true;
}

std::string Registry::format(const Monomial& m) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << vars_[i].name;
    if (m[i] > 1) os << '^' << int(m[i]);
  }
  return first ? "1" : os.str();
}

Monomial Registry::parse(const std::string& text) const {
  Monomial m;
  if (text == "1") return m;
  std::istringstream is(text);
  std::string factor;
  while (std::getline(is, factor, '*')) {
    auto caret = factor.find('^');
    std::string name = factor.substr(0, caret);
    int e = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
    if (e <= 0 || e > 255) throw StructuralError("bad exponent in monomial " + text);
    m[index(name)] = static_cast<std::uint8_t>(m[index(name)] + e);
  }
  return m;
}

std::vector<std::size_t> Registry::chern_roots() const {
  std::vector<std::size_t> out;
  for (int j = 0; j < 2 * standard_d_; ++j) out.push_back(static_cast<std::size_t>(j));
  return out;
}

bool Registry::operator==(const Registry& other) const {
  if (vars_.size() != other.vars_.size()) return false;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& a = vars_[i];
    const auto& b = other.vars_[i];
    if (a.name != b.name || a.weight != b.weight || a.kind != b.kind) return false;
  }
  return true;
}

bool same_registry(const RegistryPtr& a, const RegistryPtr& b) { return a == b || (a && b && *a == *b); }

}  // namespace modanom
