#include <gtest/gtest.h>

#include "modanom/errors.hpp"
#include "modanom/verifier.hpp"
#include "random_forms.hpp"

using namespace modanom;
using modanom::testing::RandomForms;

namespace {

GeometrySpec make(int d, int k, std::vector<long> a, std::vector<long> b, bool eta = false, int n8 = 64) {
  GeometrySpec s;
  s.d = d;
  s.k = k;
  s.a = std::move(a);
  s.b = std::move(b);
  s.has_eta = eta;
  s.n8 = n8;
  return s;
}

FormQSeries scalar(const QSeries& s) {
  return FormQSeries::from_series(s, FormPoly::constant(Registry::univariate(), Caps{0, 0}, 1));
}

}  // namespace

TEST(Decomposition, BasisElementsRoundTrip) {
  const ModularPair p2 = delta_eps(2, 64);
  // (8δ2)² at d = 2 -> h = (1, 0)
  Decomposition dec = decompose_gamma_basis(scalar(gamma_basis_element(p2, 2, 0)), 2, p2);
  EXPECT_EQ(dec.h[0].constant_term(), 1);
  EXPECT_TRUE(dec.h[1].is_zero());
  EXPECT_TRUE(dec.residual.is_zero());
  // ε2 at d = 2 -> h = (0, 1)
  dec = decompose_gamma_basis(scalar(p2.epsilon), 2, Flavor::Delta2Eps2, 64);
  EXPECT_TRUE(dec.h[0].is_zero());
  EXPECT_EQ(dec.h[1].constant_term(), 1);
  EXPECT_TRUE(dec.residual.is_zero());
}

TEST(Decomposition, DimensionFourReadsOffTheConstantTerm) {
  // leading coefficient of 8δ2 is -1, so h_0 = -F|q^0
  const ModularPair p2 = delta_eps(2, 64);
  const QSeries f = p2.delta * Rational(8) * Rational(5, 3);
  const Decomposition dec = decompose_gamma_basis(scalar(f), 1, p2);
  EXPECT_EQ(dec.h[0].constant_term(), -f.coeff(0));
  EXPECT_TRUE(dec.residual.is_zero());
}

TEST(Decomposition, NonModularInputLeavesResidual) {
  const ModularPair p2 = delta_eps(2, 64);
  QSeries f = p2.delta;
  f.add_term(12, 1);
  const Decomposition dec = decompose_gamma_basis(scalar(f), 1, p2);
  EXPECT_FALSE(dec.residual.is_zero());
  EXPECT_EQ(dec.residual.min_index(), 12);
}

TEST(Decomposition, RejectsInhomogeneousInput) {
  const RegistryPtr reg = Registry::standard(1);
  const Caps caps = default_caps(1);
  const FormPoly p = FormPoly::variable(reg, caps, "u") * FormPoly::variable(reg, caps, "u") +
                     FormPoly::variable(reg, caps, "x1");
  EXPECT_THROW(decompose_gamma_basis(FormQSeries::from_poly(p, 16), 1, Flavor::Delta2Eps2, 64), ShapeError);
}

TEST(DecompositionProperty, RandomRoundTrip) {
  RandomForms rnd(808);
  const std::vector<std::string> vars{"x1", "x2", "x3", "x4", "u"};
  const RegistryPtr reg = Registry::standard(2);
  for (int i = 0; i < 100; ++i) {
    const int d = rnd.integer(1, 3);
    const Caps caps{4 * d, 2};
    const RegistryPtr r = d == 2 ? reg : Registry::standard(d);
    const std::vector<std::string> v = d == 1 ? std::vector<std::string>{"x1", "x2", "u"} : vars;
    const ModularPair basis = delta_eps(rnd.integer(0, 1) ? 1 : 2, 48);
    FormQSeries f(r, caps, 48);
    std::vector<FormPoly> h;
    for (int k = 0; k <= d / 2; ++k) {
      h.push_back(rnd.homogeneous(r, caps, v, 4 * d, 3));
      f += FormQSeries::from_series(gamma_basis_element(basis, d, k), h.back());
    }
    const Decomposition dec = decompose_gamma_basis(f, d, basis);
    ASSERT_EQ(dec.h.size(), h.size());
    for (std::size_t k = 0; k < h.size(); ++k) EXPECT_EQ(dec.h[k], h[k]) << "instance " << i << " r=" << k;
    EXPECT_TRUE(dec.residual.is_zero());
  }
}

TEST(Theorem31, Examples) {
  for (const auto& spec : {make(1, 1, {1}, {1}), make(2, 1, {2}, {1}), make(1, 2, {1, 2}, {2, 1}),
                           make(2, 2, {1, 3}, {2, 2})}) {
    const CheckResult r = check_theorem_3_1(spec);
    EXPECT_EQ(r.status, Status::Pass) << r.id << ": " << r.message;
    EXPECT_EQ(r.anchor, "Thm 3.1");
  }
}

TEST(Theorem31, DimensionFourMatchesHandExpansion) {
  // a = 2, b = 1, P = p1 - 6u². Q2 at q^0 is {e^{P/24}·2cosh(u/2)·Â}^{(4)}
  //   = 2·((p1 - 6u²)/24 + u²/8 - p1/24) = -u²/4
  // and 8δ2 starts with -1, so h_0 = u²/4.
  const GeometrySpec spec = make(1, 1, {2}, {1});
  const CheckResult r = check_theorem_3_1(spec);
  ASSERT_EQ(r.status, Status::Pass);
  EXPECT_EQ(r.extracted["h"][0], (nlohmann::json{{"u^2", "1/4"}}));
  EXPECT_EQ(predicted_h(spec, 0, false), poly_from_json(r.extracted["h"][0], spec.registry(), spec.caps()));
}

TEST(Theorem31, CorruptedDeltaFails) {
  NumericOptions opts;
  opts.corrupt_delta2 = true;
  const CheckResult r = check_theorem_3_1(make(2, 1, {2}, {1}), opts);
  EXPECT_EQ(r.status, Status::Fail);
  ASSERT_TRUE(r.exact_residual_order.has_value());
  EXPECT_EQ(*r.exact_residual_order, kGridPerUnit);
}

TEST(Theorem31, TruncationStable) {
  for (int n8 : {64, 48, 40, 32}) {
    const CheckResult r = check_theorem_3_1(make(2, 1, {2}, {1}, false, n8));
    EXPECT_EQ(r.status, Status::Pass) << n8;
  }
}

TEST(Theorem41, Examples) {
  for (const auto& spec : {make(1, 1, {1}, {1}, true), make(1, 1, {2}, {1}, true), make(2, 1, {2}, {1}, true),
                           make(1, 1, {0}, {0}, true)}) {
    const CheckResult r = check_theorem_4_1(spec);
    EXPECT_EQ(r.status, Status::Pass) << r.id << ": " << r.message;
  }
  EXPECT_THROW(check_theorem_4_1(make(1, 1, {1}, {1})), SpecError);
}

TEST(Corollaries, DimensionFourHandExpansion) {
  // a = 2, b = 1: {2cosh(au/2)Â}^{(4)} = a²u²/4 - p1/12, so both sides are (6u² - p1)/4
  const GeometrySpec spec = make(1, 1, {2}, {1});
  const RegistryPtr reg = spec.registry();
  const Caps caps = spec.caps();
  const FormPoly x1 = FormPoly::variable(reg, caps, "x1"), x2 = FormPoly::variable(reg, caps, "x2"),
                 u = FormPoly::variable(reg, caps, "u");
  const FormPoly expected = (u * u * Rational(6) - x1 * x1 - x2 * x2) * Rational(1, 4);
  const CorollarySides sides = corollary_sides(Corollary::C32, spec);
  EXPECT_EQ(sides.lhs, expected);
  EXPECT_EQ(sides.rhs, expected);
}

TEST(Corollaries, HoldForZeroAndNegativeCharges) {
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 1}, {2, 1}, {0, 0}, {-1, 2}, {3, -2}}) {
    for (Corollary c : {Corollary::C32, Corollary::C33Formula, Corollary::C34, Corollary::C42, Corollary::C43}) {
      const bool eta = c == Corollary::C42 || c == Corollary::C43;
      const int d = (c == Corollary::C34 || c == Corollary::C43) ? 2 : 1;
      const CheckResult r = check_corollary(c, make(d, 1, {a}, {b}, eta));
      EXPECT_EQ(r.status, Status::Pass) << r.id << ": " << r.message;
    }
  }
  const CheckResult multi = check_corollary(Corollary::C32, make(1, 2, {1, 2}, {2, 1}));
  EXPECT_EQ(multi.status, Status::Pass);
  EXPECT_THROW(check_corollary(Corollary::C34, make(1, 1, {1}, {1})), SpecError);
}

TEST(SRelation, Pairs) {
  NumericOptions opts;
  opts.taus = {{0.11, 1.03}};
  EXPECT_EQ(check_s_relation(SPair::Q, make(1, 1, {1}, {1}), opts).status, Status::Pass);
  opts.taus = {{0.0, 1.0}};
  EXPECT_EQ(check_s_relation(SPair::QBar, make(1, 1, {1}, {2}, true), opts).status, Status::Pass);
  const CheckResult cs = check_s_relation(SPair::CS, make(2, 1, {2}, {1}, true));
  EXPECT_EQ(cs.status, Status::Pass);
  EXPECT_LE(*cs.numeric_max_error, 1e-8);
}

TEST(SRelation, ScaledPartnerFails) {
  const Family fam = build_family(FamilyKind::Q, make(1, 1, {2}, {1}));
  EXPECT_EQ(check_s_relation(fam.member[0], fam.member[1], fam.weight).status, Status::Pass);
  EXPECT_EQ(check_s_relation(fam.member[0], fam.member[1] * Rational(2), fam.weight).status, Status::Fail);
}

TEST(SRelation, InsufficientTruncationIsAConfigError) {
  NumericOptions opts;
  opts.taus = {{0.0, 0.3}};
  EXPECT_THROW(check_s_relation(SPair::Q, make(1, 1, {2}, {1}, false, 32), opts), ConfigError);
}

TEST(Modularity, LemmaExamples) {
  GeometrySpec spec;
  EXPECT_EQ(check_modularity(FamilyKind::Delta, 2, Group::GammaU0_2, spec).status, Status::Pass);
  EXPECT_EQ(check_modularity(FamilyKind::Epsilon, 1, Group::Gamma0_2, spec).status, Status::Pass);
  EXPECT_EQ(check_modularity(FamilyKind::Q, 2, Group::GammaU0_2, make(1, 1, {1}, {1})).status, Status::Pass);
}

TEST(Modularity, AllFamiliesOverTheirGroups) {
  const std::array<Group, 3> groups{Group::Gamma0_2, Group::GammaU0_2, Group::GammaTheta};
  NumericOptions opts;
  opts.tol = 1e-6;
  for (FamilyKind kind : {FamilyKind::Q, FamilyKind::QBar, FamilyKind::CS}) {
    const Family fam = build_family(kind, make(2, 1, {2}, {1}, true), opts);
    for (int i = 1; i <= 3; ++i) {
      const CheckResult r = check_modularity(fam, i, groups[i - 1], opts);
      EXPECT_EQ(r.status, Status::Pass) << r.id << ": " << r.message;
    }
  }
}

TEST(Modularity, WrongGroupFails) {
  // Q1 is not invariant under S alone
  const Family fam = build_family(FamilyKind::Q, make(2, 1, {2}, {1}));
  EXPECT_EQ(check_modularity(fam, 1, Group::GammaTheta, NumericOptions{}).status, Status::Fail);
}

TEST(Theorem51, Passes) {
  NumericOptions opts;
  opts.taus = {{0.07, 1.1}};
  for (const auto& spec : {make(1, 1, {1}, {1}, true), make(2, 1, {2}, {1}, true)}) {
    const CheckResult r = check_theorem_5_1(spec, opts);
    EXPECT_EQ(r.status, Status::Pass) << r.message;
    EXPECT_EQ(r.extracted["anomaly_coefficient_sums"]["CSPhi1"], 0);
  }
}

TEST(Theorem51, ExactTRelationAgreesNumerically) {
  const Family fam = build_family(FamilyKind::CS, make(1, 1, {2}, {1}, true));
  const Complex tau(0.11, 1.03);
  for (const auto& [m, series] : fam.member[1].by_monomial()) {
    const Complex shifted = evaluate(series, tau + 1.0).value;
    const Complex partner = evaluate(fam.member[2].by_monomial().at(m), tau).value;
    EXPECT_LT(std::abs(shifted - partner), 1e-10 * std::max(1.0, std::abs(partner)));
  }
}

TEST(Foundations, AllPass) {
  const auto results = check_foundations(64);
  EXPECT_GE(results.size(), 8u);
  for (const auto& r : results) EXPECT_EQ(r.status, Status::Pass) << r.id << ": " << r.message;
}

TEST(Foundations, CorruptedDeltaIsDetected) {
  NumericOptions opts;
  opts.corrupt_delta2 = true;
  int failures = 0;
  for (const auto& r : check_foundations(64, opts)) failures += r.status == Status::Fail;
  EXPECT_GE(failures, 2);
}

TEST(Agw, FlaggedAgainstStatedCoefficients) {
  const CheckResult r = check_agw(3);
  EXPECT_EQ(r.status, Status::Flagged);
  EXPECT_EQ(r.extracted["lambda"], "8");
  EXPECT_EQ(r.extracted["mu"], "-32");
  EXPECT_TRUE(r.extracted["residual"].empty());
}

TEST(Json, PolyRoundTrip) {
  const GeometrySpec spec = make(2, 1, {2}, {1});
  const FormPoly h = predicted_h(spec, 1, false);
  const nlohmann::json j = poly_to_json(h);
  EXPECT_EQ(poly_from_json(j, spec.registry(), spec.caps()), h);
  EXPECT_EQ(poly_to_json(FormPoly::constant(spec.registry(), spec.caps(), Rational(3, 7))),
            (nlohmann::json{{"1", "3/7"}}));
}

TEST(StatusText, RoundTrip) {
  for (Status s : {Status::Pass, Status::Fail, Status::Flagged, Status::Error}) EXPECT_EQ(parse_status(to_string(s)), s);
  EXPECT_THROW(parse_status("maybe"), SpecError);
}
