#include "modanom/modular_group.hpp"

#include <cctype>

#include "modanom/errors.hpp"

namespace modanom {

std::string to_string(Group g) {
  switch (g) {
    case Group::Gamma0_2:
      return "Gamma0(2)";
    case Group::GammaU0_2:
      return "Gamma^0(2)";
    case Group::GammaTheta:
      return "Gamma_theta";
  }
  return "?";
}

Group parse_group(const std::string& name) {
  if (name == "Gamma0(2)") return Group::Gamma0_2;
  if (name == "Gamma^0(2)") return Group::GammaU0_2;
  if (name == "Gamma_theta") return Group::GammaTheta;
  throw SpecError("unknown group " + name);
}

GroupElement::GroupElement(std::vector<Letter> word) : word_(std::move(word)) {}

GroupElement GroupElement::parse(const std::string& text) {
  std::vector<Letter> word;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch != 'S' && ch != 'T') throw SpecError("bad generator word " + text);
    int reps = 1;
    if (i + 1 < text.size() && text[i + 1] == '^') {
      std::size_t j = i + 2;
      reps = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) reps = reps * 10 + (text[j++] - '0');
      if (reps == 0) throw SpecError("bad exponent in word " + text);
      i = j - 1;
    }
    for (int r = 0; r < reps; ++r) word.push_back(static_cast<Letter>(ch));
  }
  return GroupElement(std::move(word));
}

Matrix2 GroupElement::matrix() const {
  static constexpr Matrix2 s{0, -1, 1, 0};
  static constexpr Matrix2 t{1, 1, 0, 1};
  Matrix2 m;
  for (Letter l : word_) m = m * (l == Letter::S ? s : t);
  return m;
}

Complex GroupElement::automorphy(Complex tau) const {
  const Matrix2 m = matrix();
  return double(m.c) * tau + double(m.d);
}

Complex GroupElement::act(Complex tau) const {
  const Matrix2 m = matrix();
  return mobius(m.a, m.b, m.c, m.d, tau);
}

std::string GroupElement::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < word_.size();) {
    std::size_t j = i;
    while (j < word_.size() && word_[j] == word_[i]) ++j;
    out += static_cast<char>(word_[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out.empty() ? "1" : out;
}

std::vector<GroupElement> generators(Group g) {
  switch (g) {
    case Group::Gamma0_2:
      return {GroupElement::parse("T"), GroupElement::parse("ST^2ST")};
    case Group::GammaU0_2:
      return {GroupElement::parse("STS"), GroupElement::parse("T^2STS")};
    case Group::GammaTheta:
      return {GroupElement::parse("S"), GroupElement::parse("T^2")};
  }
  return {};
}

bool contains(Group g, const Matrix2& m) {
  if (m.det() != 1) return false;
  auto even = [](long x) { return x % 2 == 0; };
  switch (g) {
    case Group::Gamma0_2:
      return even(m.c);
    case Group::GammaU0_2:
      return even(m.b);
    case Group::GammaTheta:
      return (even(m.b) && even(m.c)) || (even(m.a) && even(m.d));
  }
  return false;
}

}  // namespace modanom
