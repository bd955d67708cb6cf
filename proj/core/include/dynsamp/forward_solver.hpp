#pragma once

#include <cstdint>
#include <vector>

#include "dynsamp/diffusivity.hpp"
#include "dynsamp/initial_data.hpp"
#include "dynsamp/operator_spectrum.hpp"
#include "dynsamp/real.hpp"
#include "dynsamp/sampling_schedule.hpp"

// Exact series solution u(x,t) = sum_k f_k e^{lambda(k)t} sin(kx) of the
// order-2N problem, and u = sum_k f_k e^{-k^2 b(t)} sin(kx) of the
// non-autonomous heat problem.  Evaluation is certified: the returned
// absolute error bound covers all rounding (and, in the non-autonomous
// case, the b-certificate pushed through the exponential to first order).
//
// The rows are not built termwise with exp/sin calls.  lambda(k) is a
// degree-2N polynomial in k, so e^{lambda(k)t} obeys a depth-2N ladder of
// constant-ratio recurrences (2N multiplications per mode after 2N+1 seed
// exponentials), and sin(kx) obeys the three-term recurrence with
// 2cos(x).  At the tens-of-thousands-of-bits precisions the recovery
// amplification demands, a multiplication is two orders of magnitude
// cheaper than exp or sin, and both recurrences are stable here (the sine
// recurrence's error transfer is a bounded Chebyshev sum, linear in k).

namespace dynsamp {

struct EvalResult {
    Real value;
    Real cert;  // certified absolute error
    long mantissa_bits = 0;
};

struct EvalOptions {
    long min_bits = 0;      // raise working precision at least this high
    long ceiling_bits = 0;  // 0 = use default_precision_ceiling()
};

// Precision ceiling for automatic raising: the DYNSAMP_PREC_CEILING
// environment variable (mantissa bits) when set, else 4,000,000.
long default_precision_ceiling();

// u(x,t) for the autonomous problem; certified absolute error <= tol, with
// the rounding share <= tol/10.  Throws TolUnachievable if that would need
// more bits than the ceiling.
EvalResult evaluate_solution(const OperatorSpec& spec, const InitialDatum& f,
                             const Real& x, const Real& t, double tol,
                             const EvalOptions& opts = {});

// u(x,t) for the non-autonomous heat problem.
EvalResult evaluate_nonautonomous(const DiffusivityProfile& profile,
                                  const InitialDatum& f, const Real& x,
                                  const Real& t, double tol,
                                  const EvalOptions& opts = {});

struct Trace {
    Real x0{64};
    std::vector<Real> times;
    std::vector<Real> samples;
    std::vector<Real> sample_certs;  // certified absolute error per sample
    long mantissa_bits = 0;
    bool rescaled = false;
    std::vector<Real> effective_times;  // b(t_j) when rescaled: the recursion's times
    std::vector<Real> effective_certs;
    double noise_magnitude = 0.0;  // 0 = noiseless (the default; bounds assume it)
    std::uint64_t noise_seed = 0;
};

// Samples u(x0, t_j) over the plan.  min_bits lifts the working precision
// above what tol alone would pick (the recovery precision policy feeds
// this).  Noise, when requested, is uniform in [-magnitude, magnitude],
// seeded, added after the certificates are recorded.
Trace sample_trace(const OperatorSpec& spec, const InitialDatum& f,
                   const SamplingPlan& plan, double tol, long min_bits = 0,
                   double noise_magnitude = 0.0, std::uint64_t noise_seed = 0);
Trace sample_trace(const DiffusivityProfile& profile, const InitialDatum& f,
                   const SamplingPlan& plan, double tol, long min_bits = 0,
                   double noise_magnitude = 0.0, std::uint64_t noise_seed = 0);

// Upper bound on the dropped tail sum_{k>K} k^{-r} e^{lambda(k)t} for data
// in F_r: the gaps are nondecreasing, so consecutive terms shrink by at
// least e^{-delta_{K+1} t} and the tail is geometric-dominated.
Real tail_envelope(const OperatorSpec& spec, double r, long K, const Real& t,
                   mpfr_prec_t prec);

}  // namespace dynsamp
