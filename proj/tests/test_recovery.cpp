#include "dynsamp/recovery.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "dynsamp/errors.hpp"
#include "gtest/gtest.h"

namespace dynsamp {

namespace {

OperatorSpec heat() { return validate_coefficients({1.0}); }

Real golden_point(mpfr_prec_t prec = 192) {
  return Real::pi(prec) * (sqrt(Real(5L, prec)) - 1) / 2;
}

InitialDatum datum_from_doubles(std::vector<double> coeffs, double r,
                                mpfr_prec_t prec = 256) {
  InitialDatum f;
  f.smoothness_r = r;
  for (double c : coeffs) f.coeffs.emplace_back(c, prec);
  return f;
}

SamplingPlan heat_plan(long n, double rho, double t1 = 0.5) {
  return make_autonomous_plan(heat(), golden_point(), 1000, Real(t1, 64), rho,
                              n);
}

Trace gated_trace(const InitialDatum& f, const SamplingPlan& plan,
                  double tol = 1e-35) {
  return sample_trace(heat(), f, plan, tol,
                      recovery_gate_bits(heat(), plan.times) + 32);
}

}  // namespace

TEST(A0Constant, HeatAtUnitTime) {
  A0Result a = a0_constant(heat(), Real(1.0, 64), 1e-20);
  // sum_{j>=2} e^{-(4 - j^2)(-1)}: 1 + e^{-5} + e^{-12} + ...
  EXPECT_NEAR((a.value + a.tail_bound).to_double(), 1.0067440920, 1e-8);
  EXPECT_LE(a.tail_bound.to_double(), 1e-20);
  EXPECT_GE(a.terms, 2);
}

TEST(A0Constant, LargeTimeTendsToOne) {
  A0Result a = a0_constant(heat(), Real(50.0, 64), 1e-30);
  EXPECT_LE(abs(a.value + a.tail_bound - 1).to_double(), 1e-100);
}

TEST(A0Constant, FourthOrderLeadingCorrection) {
  // gap lambda(2) - lambda(3) = 70, so A0 - 1 is about e^{-35}
  OperatorSpec spec = validate_coefficients({1.0, -1.0});
  A0Result a = a0_constant(spec, Real(0.5, 64), 1e-30);
  const double lead = std::exp(-35.0);
  EXPECT_NEAR((a.value + a.tail_bound - 1).to_double(), lead, lead * 1e-3);
}

TEST(A0Constant, RejectsNonpositiveInputs) {
  EXPECT_THROW(a0_constant(heat(), Real(0.0, 64), 1e-20), Error);
  EXPECT_THROW(a0_constant(heat(), Real(1.0, 64), 0.0), Error);
}

TEST(RecoveryGateBits, HandComputedSchedule) {
  // max_k |lambda(k)| t_{n-k+1} = 4 * 2.8; ceil(11.2/ln 2) + 64
  std::vector<Real> times = {Real(1.0, 64), Real(2.8, 64), Real(7.84, 64)};
  EXPECT_EQ(recovery_gate_bits(heat(), times), 81);
}

TEST(RecoverCoefficients, ZeroTraceGivesZeroCoefficients) {
  InitialDatum f = datum_from_doubles({0.0, 0.0}, 2.0);
  SamplingPlan plan = heat_plan(4, 4.2);
  CoefficientRecovery rec = recover_coefficients(gated_trace(f, plan), heat());
  ASSERT_EQ(rec.c_bar.size(), 4u);
  for (const Real& c : rec.c_bar) EXPECT_TRUE(c.is_zero());
}

TEST(RecoverCoefficients, SingleModeIsExactUpToTheLedger) {
  InitialDatum f = datum_from_doubles({1.0}, 1.0);
  SamplingPlan plan = heat_plan(3, 4.2);
  CoefficientRecovery rec = recover_coefficients(gated_trace(f, plan), heat());
  ASSERT_EQ(rec.c_bar.size(), 3u);
  Real truth = sin(golden_point(256));
  EXPECT_LE(abs(rec.c_bar[0] - truth).to_double(),
            rec.arith_budget[0].to_double() + 1e-55);
  // no higher modes present: c_bar_2, c_bar_3 are pure arithmetic residue
  EXPECT_LE(abs(rec.c_bar[1]).to_double(),
            rec.arith_budget[1].to_double() + 1e-40);
  EXPECT_LE(abs(rec.c_bar[2]).to_double(),
            rec.arith_budget[2].to_double() + 1e-40);
}

TEST(RecoverCoefficients, GateIsEnforced) {
  InitialDatum f = datum_from_doubles({1.0}, 1.0);
  SamplingPlan plan = heat_plan(8, 4.2);
  Trace tr = sample_trace(heat(), f, plan, 1e-6);
  try {
    recover_coefficients(tr, heat());
    FAIL() << "expected PrecisionInsufficient";
  } catch (const PrecisionInsufficient& e) {
    EXPECT_LT(e.have_bits, e.need_bits);
    EXPECT_EQ(e.need_bits, recovery_gate_bits(heat(), plan.times));
  }
}

TEST(Reconstruct, KeepsCeilHalfNModes) {
  SamplingPlan plan = heat_plan(7, 4.2);
  const mpfr_prec_t p = 256;
  std::vector<double> vals = {0.3, -0.2, 0.15, 0.05, -0.4, 0.25, 0.1};
  std::vector<Real> c_bar;
  for (std::size_t k = 1; k <= 7; ++k)
    c_bar.push_back(Real(vals[k - 1], p) * sin(Real(static_cast<long>(k), p) *
                                               golden_point(p)));
  InitialDatum f = reconstruct(c_bar, plan);
  ASSERT_EQ(f.coeffs.size(), 4u);  // m = ceil(7/2)
  for (std::size_t k = 0; k < 4; ++k)
    EXPECT_NEAR(f.coeffs[k].to_double(), vals[k], 1e-55) << "k=" << k + 1;
}

TEST(Reconstruct, SingleSampleKeepsOneMode) {
  SamplingPlan plan = heat_plan(1, 4.2);
  std::vector<Real> c_bar = {Real(0.25, 192)};
  InitialDatum f = reconstruct(c_bar, plan);
  ASSERT_EQ(f.coeffs.size(), 1u);
}

TEST(Reconstruct, ZeroCoefficientsStayZero) {
  SamplingPlan plan = heat_plan(4, 4.2);
  std::vector<Real> c_bar(4, Real(192));
  InitialDatum f = reconstruct(c_bar, plan);
  ASSERT_EQ(f.coeffs.size(), 2u);
  for (const Real& c : f.coeffs) EXPECT_TRUE(c.is_zero());
}

TEST(AprioriErrorBounds, HeatScheduleClosedForm) {
  SamplingPlan plan = heat_plan(5, 1.5, 1.0);
  std::vector<Real> b = apriori_error_bounds(heat(), plan);
  ASSERT_EQ(b.size(), 5u);
  const double A0 = 1.0067440920;
  // k=1 reads the last time t_5 = 1.5^4
  const double b1 = A0 * 2.0 * std::exp(-3.0 * 5.0625);
  EXPECT_NEAR(b[0].to_double(), b1, b1 * 1e-6);
  // k=n reads t_1
  const double b5 = A0 * 32.0 * std::exp(-11.0 * 1.0);
  EXPECT_NEAR(b[4].to_double(), b5, b5 * 1e-6);
}

TEST(AprioriErrorBounds, RescaledUnitProfileMatchesAutonomous) {
  SamplingPlan aut = heat_plan(4, 1.5, 1.0);
  SamplingPlan res = make_rescaled_plan(constant_profile(1.0), golden_point(),
                                        1000, Real(1.0, 64), 1.5, 4);
  std::vector<Real> ba = apriori_error_bounds(heat(), aut);
  std::vector<Real> br = apriori_error_bounds(heat(), res);
  ASSERT_EQ(ba.size(), br.size());
  for (std::size_t k = 0; k < ba.size(); ++k) {
    const double a = ba[k].to_double();
    EXPECT_NEAR(br[k].to_double(), a, std::abs(a) * 1e-6) << "k=" << k + 1;
  }
}

TEST(AprioriErrorBounds, GateIsChecked) {
  SamplingPlan plan = heat_plan(4, 1.5);
  plan.rho = 1.0;  // forged ratio must be caught
  EXPECT_THROW(apriori_error_bounds(heat(), plan), RhoBelowThreshold);
}

TEST(OneSample, ZeroSampleGivesZeroCoefficients) {
  OneSampleResult r =
      one_sample_two_coeffs(Real(192), Real(0.5, 192), golden_point(), 2.0);
  EXPECT_TRUE(r.c1.is_zero());
  EXPECT_TRUE(r.c2.is_zero());
}

TEST(OneSample, SingleModeRecoversC1AndKillsC2) {
  const mpfr_prec_t p = 256;
  Real x0 = golden_point(p);
  Real t1(0.5, p);
  Real u1 = exp(-t1) * sin(x0);
  OneSampleResult r = one_sample_two_coeffs(u1, t1, x0, 2.0, p);
  EXPECT_LE(abs(r.c1 - sin(x0)).to_double(), 1e-70);
  // c2 = e^{4t}F - c1 e^{3t} with c1 = e^{t}F cancels identically
  EXPECT_LE(abs(r.c2).to_double(), 1e-70);
}

TEST(OneSample, DisplayedBoundValues) {
  OneSampleResult r =
      one_sample_two_coeffs(Real(0.1, 256), Real(1.0, 256), golden_point(), 2.0);
  // 2^{-r} e^{-3t}/(1 - e^{-t}) at r=2, t=1
  EXPECT_NEAR(r.bound1.to_double(), 0.019690, 1e-6);
  const double b2 =
      0.25 * (1.0 + std::exp(-5.0)) / (1.0 - std::exp(-1.0));
  EXPECT_NEAR(r.bound2.to_double(), b2, 1e-12);
}

TEST(OneSample, BoundsCoverBallData) {
  const mpfr_prec_t p = 256;
  Real x0 = golden_point(p);
  for (double t1d : {0.5, 1.0}) {
    Real t1(t1d, p);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      InitialDatum f = random_ball_member(2.0, 50, 0.9, seed);
      EvalResult u = evaluate_solution(heat(), f, x0, t1, 1e-40);
      OneSampleResult r = one_sample_two_coeffs(u.value, t1, x0, 2.0, p);
      const Real c1_true = f.coeffs[0].rounded_to(p) * sin(x0);
      const Real c2_true = f.coeffs[1].rounded_to(p) * sin(Real(2L, p) * x0);
      EXPECT_LE(abs(r.c1 - c1_true).to_double(),
                r.bound1.to_double() + 1e-30)
          << "t1=" << t1d << " seed=" << seed;
      // the second bound covers the size of c2 itself
      EXPECT_LE(abs(c2_true).to_double(), r.bound2.to_double())
          << "t1=" << t1d << " seed=" << seed;
    }
  }
}

TEST(OneSample, ResonantPointAndBadTimeRejected) {
  EXPECT_THROW(one_sample_two_coeffs(Real(0.1, 256), Real(0.5, 256),
                                     Real::pi(256), 2.0),
               ResonantPoint);
  EXPECT_THROW(one_sample_two_coeffs(Real(0.1, 256), Real(256),
                                     golden_point(), 2.0),
               Error);
}

TEST(OracleRecover, SingleSampleMatchesTheRecursion) {
  InitialDatum f = random_ball_member(2.0, 10, 0.9, 2);
  SamplingPlan plan = heat_plan(1, 4.2);
  Trace tr = gated_trace(f, plan);
  CoefficientRecovery rec = recover_coefficients(tr, heat());
  OracleRecovery ora = oracle_recover(tr, heat(), 1);
  ASSERT_EQ(ora.c.size(), 1u);
  EXPECT_LE(abs(ora.c[0] - rec.c_bar[0]).to_double(),
            (ora.budget + rec.arith_budget[0]).to_double() + 1e-40);
}

TEST(OracleRecover, TwoByTwoClosedForm) {
  const mpfr_prec_t p = 512;
  InitialDatum f = datum_from_doubles({0.7, -0.3}, 1.0);
  SamplingPlan plan = heat_plan(2, 2.8);
  Trace tr = gated_trace(f, plan);
  OracleRecovery ora = oracle_recover(tr, heat(), 2);
  ASSERT_EQ(ora.c.size(), 2u);
  // Cramer on M = [[e^{-t1}, e^{-4t1}], [e^{-t2}, e^{-4t2}]]
  Real t1 = tr.times[0].rounded_to(p), t2 = tr.times[1].rounded_to(p);
  Real u1 = tr.samples[0].rounded_to(p), u2 = tr.samples[1].rounded_to(p);
  Real m11 = exp(-t1), m12 = exp(Real(-4L, p) * t1);
  Real m21 = exp(-t2), m22 = exp(Real(-4L, p) * t2);
  Real det = m11 * m22 - m12 * m21;
  Real c1 = (u1 * m22 - m12 * u2) / det;
  Real c2 = (m11 * u2 - u1 * m21) / det;
  EXPECT_LE(abs(ora.c[0] - c1).to_double(), ora.budget.to_double() + 1e-28);
  EXPECT_LE(abs(ora.c[1] - c2).to_double(), ora.budget.to_double() + 1e-28);
}

TEST(OracleRecover, ExactOnTruthSupportedWithinN) {
  const mpfr_prec_t p = 256;
  InitialDatum f = datum_from_doubles({0.4, -0.2, 0.1}, 1.0);
  SamplingPlan plan = heat_plan(3, 4.2);
  Trace tr = gated_trace(f, plan);
  OracleRecovery ora = oracle_recover(tr, heat(), 3);
  Real x0 = golden_point(p);
  for (long k = 1; k <= 3; ++k) {
    Real truth = f.coeffs[static_cast<std::size_t>(k - 1)].rounded_to(p) *
                 sin(Real(k, p) * x0);
    EXPECT_LE(abs(ora.c[static_cast<std::size_t>(k - 1)] - truth).to_double(),
              ora.budget.to_double() + 1e-40)
        << "k=" << k;
  }
}

TEST(OracleRecover, AliasedTailStaysWithinTheAmplifiedEnvelope) {
  const mpfr_prec_t p = 256;
  InitialDatum f = random_ball_member(2.0, 12, 0.9, 9);
  SamplingPlan plan = heat_plan(5, 4.2);
  Trace tr = gated_trace(f, plan);
  OracleRecovery ora = oracle_recover(tr, heat(), 5);
  Real x0 = golden_point(p);
  // worst aliasing input: max_j sum_{k>5} |c_k| e^{lambda(k) t_j}
  Real d_max(p);
  for (std::size_t j = 0; j < 5; ++j) {
    Real dj(p);
    for (long k = 6; k <= 12; ++k)
      dj += abs(f.coeffs[static_cast<std::size_t>(k - 1)].rounded_to(p) *
                sin(Real(k, p) * x0)) *
            exp(Real(-k * k, p) * tr.times[j].rounded_to(p));
    d_max = max(d_max, dj);
  }
  const double slack =
      ora.budget.to_double() + (ora.inv_norm * d_max).to_double() + 1e-40;
  for (long k = 1; k <= 5; ++k) {
    Real truth = f.coeffs[static_cast<std::size_t>(k - 1)].rounded_to(p) *
                 sin(Real(k, p) * x0);
    EXPECT_LE(abs(ora.c[static_cast<std::size_t>(k - 1)] - truth).to_double(),
              slack)
        << "k=" << k;
  }
}

TEST(PlanPrecisionBits, DominatesTheGateAndTheFloorRelaxes) {
  SamplingPlan p6 = heat_plan(6, 4.2);
  const long full = plan_precision_bits(heat(), p6, 2.0, 200);
  EXPECT_GE(full, recovery_gate_bits(heat(), p6.times));
  EXPECT_GE(full, 192);
  const long floored = plan_precision_bits(heat(), p6, 2.0, 200, 1e-3, -256.0);
  EXPECT_LE(floored, full);
  SamplingPlan p4 = heat_plan(4, 4.2);
  EXPECT_LE(plan_precision_bits(heat(), p4, 2.0, 200), full);
}

}  // namespace dynsamp
