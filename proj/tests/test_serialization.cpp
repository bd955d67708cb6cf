#include "dynsamp/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "dynsamp/errors.hpp"
#include "dynsamp/experiment.hpp"
#include "gtest/gtest.h"

namespace dynsamp {

namespace {

OperatorSpec heat() { return validate_coefficients({1.0}); }

Real golden_point(mpfr_prec_t prec = 192) {
  return Real::pi(prec) * (sqrt(Real(5L, prec)) - 1) / 2;
}

Trace small_trace() {
  InitialDatum f = random_ball_member(2.0, 20, 0.9, 3);
  SamplingPlan plan = make_autonomous_plan(heat(), golden_point(), 1000,
                                           Real(0.5, 64), 4.2, 3);
  return sample_trace(heat(), f, plan, 1e-30,
                      recovery_gate_bits(heat(), plan.times) + 32);
}

}  // namespace

TEST(DatumJson, RoundTripPreservesEveryCoefficient) {
  InitialDatum f = random_ball_member(1.5, 15, 0.8, 11);
  std::string text = datum_to_json(f);
  InitialDatum back = datum_from_json(text, 192);
  EXPECT_DOUBLE_EQ(back.smoothness_r, 1.5);
  ASSERT_EQ(back.coeffs.size(), f.coeffs.size());
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    EXPECT_EQ(back.coeffs[i].str(), f.coeffs[i].str()) << "i=" << i;
}

TEST(DatumJson, EmissionIsValidJsonWithTheTwoFields) {
  InitialDatum f = random_ball_member(2.0, 5, 0.9, 1);
  nlohmann::json j = nlohmann::json::parse(datum_to_json(f));
  EXPECT_TRUE(j.contains("r"));
  EXPECT_TRUE(j.contains("coeffs"));
  EXPECT_EQ(j["coeffs"].size(), 5u);
}

TEST(DatumJson, MalformedInputThrows) {
  EXPECT_THROW(datum_from_json("{\"r\": 2}", 192), Error);
  EXPECT_THROW(datum_from_json("{\"coeffs\": []}", 192), Error);
  EXPECT_THROW(datum_from_json("{\"r\": \"two\", \"coeffs\": []}", 192), Error);
  EXPECT_THROW(datum_from_json("not json", 192), Error);
}

TEST(TraceJson, RoundTripKeepsSamplesBitExact) {
  Trace tr = small_trace();
  std::string text = trace_to_json(tr);
  Trace back = trace_from_json(text);
  EXPECT_EQ(back.mantissa_bits, tr.mantissa_bits);
  EXPECT_EQ(back.rescaled, tr.rescaled);
  ASSERT_EQ(back.samples.size(), tr.samples.size());
  for (std::size_t j = 0; j < tr.samples.size(); ++j) {
    // samples and certificates live at the trace precision: bit for bit
    EXPECT_EQ(back.samples[j].str(), tr.samples[j].str()) << "j=" << j;
    EXPECT_EQ(back.sample_certs[j].str(), tr.sample_certs[j].str())
        << "j=" << j;
    // times were built at the wider plan precision: exact to the trace's
    EXPECT_LE(abs(back.times[j] - tr.times[j]).to_double(),
              std::ldexp(tr.times[j].to_double(), 2 - static_cast<int>(
                                                          tr.mantissa_bits)))
        << "j=" << j;
  }
  EXPECT_LE(abs(back.x0 - tr.x0).to_double(), 1e-50);
}

TEST(TraceJson, EmissionIsDeterministic) {
  EXPECT_EQ(trace_to_json(small_trace()), trace_to_json(small_trace()));
}

TEST(TraceJson, RescaledFieldsTravel) {
  DiffusivityProfile prof = sinusoidal_profile(1.0, 0.5, 1.0);
  InitialDatum f = random_ball_member(2.0, 10, 0.9, 8);
  SamplingPlan plan =
      make_rescaled_plan(prof, golden_point(), 500, Real(0.5, 64), 2.8, 3);
  Trace tr = sample_trace(prof, f, plan, 1e-25, 256);
  ASSERT_TRUE(tr.rescaled);
  Trace back = trace_from_json(trace_to_json(tr));
  EXPECT_TRUE(back.rescaled);
  ASSERT_EQ(back.effective_times.size(), 3u);
  for (std::size_t j = 0; j < 3; ++j)
    EXPECT_EQ(back.effective_times[j].str(), tr.effective_times[j].str())
        << "j=" << j;
}

TEST(RecoveryResultJson, DeterministicAndWellFormed) {
  Trace tr = small_trace();
  CoefficientRecovery rec = recover_coefficients(tr, heat());
  RecoveryResult result;
  result.n = 3;
  result.m = 2;
  result.c_bar = rec.c_bar;
  result.arith_budget = rec.arith_budget;
  result.mantissa_bits = rec.mantissa_bits;
  std::string a = recovery_result_to_json(result);
  std::string b = recovery_result_to_json(result);
  EXPECT_EQ(a, b);
  nlohmann::json j = nlohmann::json::parse(a);
  EXPECT_EQ(j["n"].template get<long>(), 3);
  EXPECT_EQ(j["m"].template get<long>(), 2);
  EXPECT_EQ(j["c_bar"].size(), 3u);
}

TEST(TextFiles, WriteThenReadRoundTrips) {
  const std::string path = "roundtrip_scratch.txt";
  const std::string body = "line one\nline two\n";
  write_text_file(path, body);
  EXPECT_EQ(read_text_file(path), body);
  std::remove(path.c_str());
  EXPECT_THROW(read_text_file(path), Error);
}

}  // namespace dynsamp
