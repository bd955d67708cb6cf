#include "dynsamp/forward_solver.hpp"

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
                                mpfr_prec_t prec = 192) {
  InitialDatum f;
  f.smoothness_r = r;
  for (double c : coeffs) f.coeffs.emplace_back(c, prec);
  return f;
}

SamplingPlan small_heat_plan(long n, double rho = 4.2) {
  return make_autonomous_plan(heat(), golden_point(), 1000, Real(0.5, 64), rho,
                              n);
}

}  // namespace

TEST(EvaluateSolution, SingleHeatModeAtHalfPi) {
  InitialDatum f = datum_from_doubles({1.0}, 1.0);
  EvalResult res = evaluate_solution(heat(), f, Real::pi(192) / 2,
                                     Real(1.0, 64), 1e-30);
  // u = e^{-t} sin(x): e^{-1}
  EXPECT_NEAR(res.value.to_double(), 0.36787944117144233, 1e-15);
  EXPECT_LE(res.cert.to_double(), 1e-30);
  EXPECT_LE(abs(res.value - exp(Real(-1L, 256))).to_double(),
            res.cert.to_double());
}

TEST(EvaluateSolution, VanishesAtTheBoundary) {
  InitialDatum f = datum_from_doubles({1.0, 0.5, -0.25}, 1.0);
  EvalResult at_zero =
      evaluate_solution(heat(), f, Real(0L, 192), Real(1.0, 64), 1e-30);
  EXPECT_TRUE(at_zero.value.is_zero());
  EvalResult at_pi =
      evaluate_solution(heat(), f, Real::pi(256), Real(1.0, 64), 1e-30);
  // sin(k pi) at 256 bits is below 2^{-250}
  EXPECT_LE(abs(at_pi.value).to_double(), 1e-40);
}

TEST(EvaluateSolution, TwoModeFourthOrder) {
  OperatorSpec spec = validate_coefficients({1.0, -1.0});
  InitialDatum f = datum_from_doubles({0.5, 0.25}, 1.0);
  EvalResult res =
      evaluate_solution(spec, f, Real(1.0, 192), Real(0.1, 64), 1e-30);
  // lambda(1) = -2, lambda(2) = -20
  const double expected = 0.5 * std::exp(-0.2) * std::sin(1.0) +
                          0.25 * std::exp(-2.0) * std::sin(2.0);
  EXPECT_NEAR(res.value.to_double(), expected, 1e-12);
}

TEST(EvaluateSolution, LinearInTheDatum) {
  InitialDatum f = datum_from_doubles({0.3, -0.2, 0.1}, 1.0);
  InitialDatum g = datum_from_doubles({0.05, 0.4, -0.15}, 1.0);
  InitialDatum sum;
  sum.smoothness_r = 1.0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    sum.coeffs.push_back(f.coeffs[i] + g.coeffs[i]);
  Real x = golden_point();
  Real t(0.7, 64);
  const double tol = 1e-25;
  EvalResult rf = evaluate_solution(heat(), f, x, t, tol);
  EvalResult rg = evaluate_solution(heat(), g, x, t, tol);
  EvalResult rs = evaluate_solution(heat(), sum, x, t, tol);
  EXPECT_LE(abs(rs.value - (rf.value + rg.value)).to_double(), 2 * tol);
}

TEST(EvaluateNonautonomous, UnitProfileEqualsHeat) {
  DiffusivityProfile prof = constant_profile(1.0);
  InitialDatum f = datum_from_doubles({0.6, -0.3, 0.2}, 1.0);
  Real x = golden_point();
  for (double td : {0.25, 1.0, 2.5}) {
    Real t(td, 64);
    EvalResult a = evaluate_nonautonomous(prof, f, x, t, 1e-25);
    EvalResult b = evaluate_solution(heat(), f, x, t, 1e-25);
    EXPECT_LE(abs(a.value - b.value).to_double(),
              a.cert.to_double() + b.cert.to_double())
        << "t=" << td;
  }
}

TEST(EvaluateNonautonomous, TimeChangeForConstantProfile) {
  // alpha = 2: u_prof(x, t) = u_heat(x, 2t)
  DiffusivityProfile prof = constant_profile(2.0);
  InitialDatum f = datum_from_doubles({1.0}, 1.0);
  EvalResult a =
      evaluate_nonautonomous(prof, f, Real::pi(192) / 2, Real(0.5, 64), 1e-25);
  EXPECT_NEAR(a.value.to_double(), 0.36787944117144233, 1e-15);
  EvalResult b = evaluate_solution(heat(), f, Real::pi(192) / 2,
                                   Real(1.0, 64), 1e-25);
  EXPECT_LE(abs(a.value - b.value).to_double(),
            a.cert.to_double() + b.cert.to_double());
}

TEST(EvaluateNonautonomous, SinusoidalClosedForm) {
  // b(1) = 1 + (1 - cos 1)/2
  DiffusivityProfile prof = sinusoidal_profile(1.0, 0.5, 1.0);
  InitialDatum f = datum_from_doubles({1.0}, 1.0);
  EvalResult res =
      evaluate_nonautonomous(prof, f, Real::pi(192) / 2, Real(1.0, 64), 1e-20);
  const double b1 = 1.0 + 0.5 * (1.0 - std::cos(1.0));
  EXPECT_NEAR(res.value.to_double(), std::exp(-b1), 1e-10);
  EXPECT_LE(res.cert.to_double(), 1e-20);
}

TEST(SampleTrace, ZeroDatumGivesZeroSamples) {
  InitialDatum f = datum_from_doubles({0.0, 0.0}, 2.0);
  SamplingPlan plan = small_heat_plan(4);
  Trace tr = sample_trace(heat(), f, plan, 1e-30);
  ASSERT_EQ(tr.samples.size(), 4u);
  for (const Real& s : tr.samples) EXPECT_TRUE(s.is_zero());
}

TEST(SampleTrace, SingleModeDecaysMonotonically) {
  InitialDatum f = datum_from_doubles({1.0}, 1.0);
  SamplingPlan plan = small_heat_plan(5);
  Trace tr = sample_trace(heat(), f, plan, 1e-30);
  ASSERT_EQ(tr.samples.size(), 5u);
  for (std::size_t j = 1; j < 5; ++j)
    EXPECT_TRUE(abs(tr.samples[j]) < abs(tr.samples[j - 1])) << "j=" << j;
  for (const Real& c : tr.sample_certs) EXPECT_LE(c.to_double(), 1e-30);
}

TEST(SampleTrace, DecayEnvelopeForBallData) {
  InitialDatum f = random_ball_member(1.0, 20, 0.9, 3);
  SamplingPlan plan = small_heat_plan(4);
  Trace tr = sample_trace(heat(), f, plan, 1e-30);
  double mass = 0.0;
  for (const Real& c : f.coeffs) mass += std::abs(c.to_double());
  for (std::size_t j = 0; j < 4; ++j) {
    const double t = tr.times[j].to_double();
    EXPECT_LE(std::abs(tr.samples[j].to_double()),
              mass * std::exp(-t) + 1e-25)
        << "j=" << j;
  }
}

TEST(SampleTrace, MinBitsLiftsTheWorkingPrecision) {
  InitialDatum f = datum_from_doubles({1.0}, 1.0);
  SamplingPlan plan = small_heat_plan(3);
  Trace tr = sample_trace(heat(), f, plan, 1e-10, 512);
  EXPECT_GE(tr.mantissa_bits, 512);
}

TEST(SampleTrace, NoiseIsBoundedAndSeeded) {
  InitialDatum f = random_ball_member(2.0, 10, 0.9, 4);
  SamplingPlan plan = small_heat_plan(3);
  Trace clean = sample_trace(heat(), f, plan, 1e-30);
  Trace noisy = sample_trace(heat(), f, plan, 1e-30, 0, 1e-6, 5);
  Trace again = sample_trace(heat(), f, plan, 1e-30, 0, 1e-6, 5);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_LE(abs(noisy.samples[j] - clean.samples[j]).to_double(), 1e-6)
        << "j=" << j;
    EXPECT_EQ(noisy.samples[j].str(), again.samples[j].str()) << "j=" << j;
  }
  EXPECT_DOUBLE_EQ(noisy.noise_magnitude, 1e-6);
  EXPECT_EQ(noisy.noise_seed, 5u);
}

TEST(SampleTrace, RescaledPlanRecordsEffectiveTimes) {
  DiffusivityProfile prof = sinusoidal_profile(1.0, 0.5, 1.0);
  InitialDatum f = random_ball_member(2.0, 10, 0.9, 6);
  SamplingPlan plan =
      make_rescaled_plan(prof, golden_point(), 500, Real(0.5, 64), 2.8, 3);
  Trace tr = sample_trace(prof, f, plan, 1e-30);
  EXPECT_TRUE(tr.rescaled);
  ASSERT_EQ(tr.effective_times.size(), 3u);
  for (std::size_t j = 0; j < 3; ++j)
    EXPECT_LE(abs(tr.effective_times[j] - plan.b_values[j]).to_double(), 1e-25)
        << "j=" << j;
}

TEST(TailEnvelope, DominatesTheBruteForceTail) {
  // tail beyond K=10 at t=1 against 200 summed terms
  const mpfr_prec_t p = 256;
  Real t(1.0, 64);
  Real env = tail_envelope(heat(), 1.0, 10, t, p);
  Real brute(p);
  for (long k = 11; k <= 200; ++k)
    brute += exp(Real(-k * k, p)) / Real(k, p);
  EXPECT_TRUE(env >= brute);
  EXPECT_LE((env / brute).to_double(), 1.0 + 1e-6);
}

TEST(TailEnvelope, ShrinksWithK) {
  Real t(0.5, 64);
  Real e10 = tail_envelope(heat(), 2.0, 10, t, 192);
  Real e20 = tail_envelope(heat(), 2.0, 20, t, 192);
  EXPECT_TRUE(e20 < e10);
}

}  // namespace dynsamp
