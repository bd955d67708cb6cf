#pragma once

#include <optional>
#include <vector>

#include "dynsamp/diffusivity.hpp"
#include "dynsamp/operator_spectrum.hpp"
#include "dynsamp/real.hpp"

// Sampling plans: where to sample (a point x0 with |sin(k x0)| >= d0/k so no
// mode is invisible) and when (geometric times t_j = rho^{j-1} t1 for the
// autonomous problem, or times driven through b for the non-autonomous one,
// b(t_j) >= rho^{j-1} b(t1)).  The ratio gate rho > 2N ln 2 is enforced
// strictly here; certified_rho_threshold marks the stronger ratio the error
// bounds need.

namespace dynsamp {

struct SamplingPlan {
    Real x0{64};
    double d0 = 0.0;          // scanned min of k|sin(k x0)| over k <= K_scan
    long K_scan = 0;          // provenance of d0
    double rho = 0.0;
    long n = 0;
    std::vector<Real> times;  // t_1 < ... < t_n
    bool rescaled = false;
    std::optional<DiffusivityProfile> profile;  // set when rescaled
    std::vector<Real> b_values;  // rescaled: certified b(t_j) values
    std::vector<Real> b_certs;
    mpfr_prec_t prec = 0;     // precision the times were built at
};

// d0 = min_{k <= K_scan} k|sin(k x0)|.  Throws ResonantPoint(k) when some
// |sin(k x0)| falls below the resonance floor 2^(-prec/2) of x0's precision.
double scan_sampling_point(const Real& x0, long K_scan);

// Geometric times t_j = rho^{j-1} t1, all products exact: the returned
// precision is at least 53(n+1) + 64 bits, enough that products of the
// double-valued rho with t1 never round.  Throws RhoBelowThreshold unless
// rho > rho_threshold(spec) strictly.
std::vector<Real> geometric_times(const Real& t1, double rho, long n,
                                  const OperatorSpec& spec,
                                  mpfr_prec_t prec = 0);

struct RescaledTimes {
    std::vector<Real> times;     // wall-clock t_j
    std::vector<Real> b_values;  // certified b(t_j)
    std::vector<Real> b_certs;
};

// Times t_j with b(t_j) >= rho^{j-1} b(t1) guaranteed: bisection on the
// strictly increasing b down to a relative bracket of 2^(-prec/2), taking
// the upper end and nudging by the b-certificate so the inequality is
// certain.  Throws RhoBelowThreshold (gate 2 ln 2, the heat-order rule) or
// RootBracketFailure if the horizon search cannot bracket the target.
RescaledTimes rescaled_times(const DiffusivityProfile& profile, const Real& t1,
                             double rho, long n, mpfr_prec_t prec = 256);

// Assembled plans.  x0 is scanned up to K_scan before use; rho must clear
// the gate.  These are what the pipeline and tests build.
SamplingPlan make_autonomous_plan(const OperatorSpec& spec, const Real& x0,
                                  long K_scan, const Real& t1, double rho,
                                  long n);
SamplingPlan make_rescaled_plan(const DiffusivityProfile& profile, const Real& x0,
                                long K_scan, const Real& t1, double rho, long n,
                                mpfr_prec_t prec = 256);

}  // namespace dynsamp
