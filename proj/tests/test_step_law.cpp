#include "finconn/step_law.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "finconn/errors.hpp"

using namespace finconn;

TEST(Validate1D, SymmetricLawPasses) {
  auto rep = validate(make_srw());
  EXPECT_TRUE(rep.all_pass());
}

TEST(Validate1D, AsymmetricLawFailsSymmetryCheck) {
  StepLaw1D law("biased", {{-1, 0.6}, {1, 0.4}}, /*claims_symmetric=*/true);
  auto rep = validate(law);
  EXPECT_FALSE(rep.all_pass());
  const auto* item = rep.find("symmetry");
  ASSERT_NE(item, nullptr);
  EXPECT_FALSE(item->pass);
  EXPECT_NE(item->detail.find("1"), std::string::npos);
}

TEST(Validate3D, LateralConeViolationDetected) {
  StepLaw3D law("bad", {{{1, 3, 0}, 0.5}, {{1, -3, 0}, 0.5}}, /*alpha=*/2.0,
                /*beta=*/0.1);
  auto rep = validate(law);
  const auto* item = rep.find("lateral_cone_bound");
  ASSERT_NE(item, nullptr);
  EXPECT_FALSE(item->pass);
}

TEST(Validate3D, BuiltinsPass) {
  EXPECT_TRUE(validate(make_uniform3()).all_pass());
  EXPECT_TRUE(validate(make_geom3()).all_pass());
}

TEST(Tilt, ZeroTiltIsIdentity) {
  auto law = make_uniform3();
  auto tilted = tilt(law, TiltParams{0.0, 0.0});
  ASSERT_EQ(tilted.support().size(), law.support().size());
  for (std::size_t i = 0; i < law.support().size(); ++i) {
    EXPECT_EQ(tilted.support()[i].step, law.support()[i].step);
    EXPECT_NEAR(tilted.support()[i].prob, law.support()[i].prob, 1e-15);
  }
}

TEST(Tilt, TwoPointTimeLawClosedForm) {
  // time displacement 1 or 2 with probability 1/2 each; tilting the time
  // coordinate by log 2 reweights to 1/3, 2/3.
  StepLaw3D law("rho12",
                {{{1, 0, 0}, 0.5}, {{2, 0, 0}, 0.5}}, 1.0, 0.1, 10.0);
  auto tilted = tilt(law, TiltParams{std::log(2.0), 0.0});
  EXPECT_NEAR(tilted.support()[0].prob, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(tilted.support()[1].prob, 2.0 / 3.0, 1e-15);
}

TEST(Tilt, RoundTripRestoresLaw) {
  auto law = make_geom3();
  TiltParams lambda{0.3, -0.2};
  auto back = tilt(tilt(law, lambda), TiltParams{-lambda.lambda_t,
                                                 -lambda.lambda_x});
  for (std::size_t i = 0; i < law.support().size(); ++i)
    EXPECT_NEAR(back.support()[i].prob, law.support()[i].prob, 1e-12);
}

TEST(SolveTilt, UntiltedMeanGivesZero) {
  auto law = make_uniform3();
  auto m = moments(law);
  auto lambda = solve_tilt(law, MeanTarget{m.mean[0], m.mean[1]});
  EXPECT_NEAR(lambda.lambda_t, 0.0, 1e-9);
  EXPECT_NEAR(lambda.lambda_x, 0.0, 1e-9);
}

TEST(SolveTilt, TwoPointTimeLawMatchesClosedForm) {
  StepLaw3D law("rho12",
                {{{1, 0, 0}, 0.5}, {{2, 0, 0}, 0.5}}, 1.0, 0.1, 10.0);
  // mean at tilt log2: 1*(1/3) + 2*(2/3) = 5/3
  auto lambda = solve_tilt(law, MeanTarget{5.0 / 3.0, 0.0});
  EXPECT_NEAR(lambda.lambda_t, std::log(2.0), 1e-9);
  // mean 4/3 sits on the other side: tilt -log2
  lambda = solve_tilt(law, MeanTarget{4.0 / 3.0, 0.0});
  EXPECT_NEAR(lambda.lambda_t, -std::log(2.0), 1e-9);
}

TEST(SolveTilt, SolveThenMeasureHitsTarget) {
  auto law = make_geom3();
  MeanTarget target{1.9, 0.12};
  auto lambda = solve_tilt(law, target);
  auto m = moments(tilt(law, lambda));
  EXPECT_NEAR(m.mean[0], target.t, 1e-10);
  EXPECT_NEAR(m.mean[1], target.lateral, 1e-10);
  EXPECT_NEAR(m.mean[2], target.lateral, 1e-10);
}

TEST(SolveTilt, UnreachableTargetThrows) {
  auto law = make_uniform3();  // time displacement identically 1
  EXPECT_THROW(solve_tilt(law, MeanTarget{1.5, 0.0}), ValidationError);
}

TEST(DifferenceLaw, Uniform3IsTriangular) {
  auto z = difference_law(make_uniform3());
  EXPECT_NEAR(z.prob(-2), 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(z.prob(-1), 2.0 / 9.0, 1e-15);
  EXPECT_NEAR(z.prob(0), 3.0 / 9.0, 1e-15);
  EXPECT_NEAR(z.prob(1), 2.0 / 9.0, 1e-15);
  EXPECT_NEAR(z.prob(2), 1.0 / 9.0, 1e-15);
  EXPECT_TRUE(validate(z).all_pass());
  EXPECT_NEAR(moments(z).variance, 4.0 / 3.0, 1e-14);
}

TEST(DifferenceLaw, DegeneratePairIsPointMass) {
  StepLaw3D law("still", {{{1, 0, 0}, 1.0}}, 1.0, 0.1, 10.0);
  auto z = difference_law(law);
  EXPECT_EQ(z.support().size(), 1u);
  EXPECT_EQ(z.support()[0].value, 0);
}

TEST(DifferenceLaw, SymmetricForDiagonalSymmetricLaws) {
  // Any tilt along (1,1) keeps the diagonal symmetry, hence the difference
  // stays symmetric.
  auto tilted = tilt(make_uniform3(), TiltParams{0.0, 0.35});
  auto z = difference_law(tilted);
  auto rep = validate(z);
  EXPECT_TRUE(rep.all_pass());
}

TEST(Moments, SimpleLaws) {
  auto m1 = moments(make_srw());
  EXPECT_DOUBLE_EQ(m1.mean, 0.0);
  EXPECT_DOUBLE_EQ(m1.variance, 1.0);
  StepLaw3D rho12("rho12", {{{1, 0, 0}, 0.5}, {{2, 0, 0}, 0.5}}, 1.0, 0.1,
                  10.0);
  EXPECT_DOUBLE_EQ(moments(rho12).mean[0], 1.5);
}

TEST(Json, RoundTrip1D) {
  auto law = make_jump13();
  auto text = to_json(law);
  auto restored = step_law_1d_from_json(text);
  EXPECT_EQ(restored.name(), law.name());
  ASSERT_EQ(restored.support().size(), law.support().size());
  for (std::size_t i = 0; i < law.support().size(); ++i) {
    EXPECT_EQ(restored.support()[i].value, law.support()[i].value);
    EXPECT_DOUBLE_EQ(restored.support()[i].prob, law.support()[i].prob);
  }
}

TEST(Json, RoundTrip3D) {
  auto law = make_geom3();
  auto restored = step_law_3d_from_json(to_json(law));
  EXPECT_EQ(restored.support().size(), law.support().size());
  EXPECT_DOUBLE_EQ(restored.cone_slope(), law.cone_slope());
}

TEST(Builtins, LookupByName) {
  EXPECT_EQ(step_law_1d_by_name("srw").name(), "srw");
  EXPECT_EQ(step_law_3d_by_name("uniform3").name(), "uniform3");
  EXPECT_THROW(step_law_1d_by_name("nope"), ValidationError);
}
