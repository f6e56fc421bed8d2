#pragma once

#include <array>
#include <string>
#include <vector>

#include "modanom/numeric.hpp"

namespace modanom {

/// Level-2 congruence subgroups of SL2(Z).
enum class Group {
  Gamma0_2,   ///< c ≡ 0 mod 2
  GammaU0_2,  ///< b ≡ 0 mod 2
  GammaTheta  ///< ≡ identity or antidiagonal mod 2
};

std::string to_string(Group g);
Group parse_group(const std::string& name);

struct Matrix2 {
  long a = 1, b = 0, c = 0, d = 1;

  Matrix2 operator*(const Matrix2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  long det() const { return a * d - b * c; }
  bool operator==(const Matrix2&) const = default;
};

enum class Letter : char { S = 'S', T = 'T' };

/// Word in the generators S = (0 -1; 1 0) and T = (1 1; 0 1).
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<Letter> word);
  /// Parses words such as "ST^2ST" or "T".
  static GroupElement parse(const std::string& word);

  const std::vector<Letter>& word() const { return word_; }
  Matrix2 matrix() const;
  /// (cτ + d) for the evaluated matrix.
  Complex automorphy(Complex tau) const;
  Complex act(Complex tau) const;
  std::string to_string() const;

 private:
  std::vector<Letter> word_;
};

/// Generators of each group as words in S and T:
/// Γ0(2): T, ST²ST; Γ^0(2): STS, T²STS; Γθ: S, T².
std::vector<GroupElement> generators(Group g);
bool contains(Group g, const Matrix2& m);

}  // namespace modanom
