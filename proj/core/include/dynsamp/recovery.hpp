#pragma once

#include <limits>
#include <vector>

#include "dynsamp/forward_solver.hpp"
#include "dynsamp/initial_data.hpp"
#include "dynsamp/operator_spectrum.hpp"
#include "dynsamp/real.hpp"
#include "dynsamp/sampling_schedule.hpp"

// The inverse step.  From samples F(t_j) = u(x0, t_j) taken on an
// admissible plan, the coefficients c_k = f_k sin(k x0) come out of the
// backward recursion
//
//   c1 = e^{-lambda(1) t_n} F(t_n),
//   ck = e^{-lambda(k) t_{n-k+1}} F(t_{n-k+1})
//        - sum_{j<k} cj e^{(lambda(j)-lambda(k)) t_{n-k+1}},
//
// each mode read off at the latest unused time, where the faster-decaying
// higher modes have died.  The reconstruction keeps m = ceil(n/2) modes;
// the a-priori error of mode k is bounded by A0(t1) 2^k e^{-delta_k
// t_{n-k+1}}, with A0(t1) = sum_{j>=2} e^{-(lambda(2)-lambda(j)) t1}.
//
// Alongside the model bounds, every recovery carries a certified
// arithmetic ledger: sample certificates enter c1..cn through the same
// exponentials as the data, so the ledger reuses them, plus a rounding
// term per operation.  The ledger is what separates "the bound failed"
// from "the arithmetic was too coarse" in every downstream check.

namespace dynsamp {

struct A0Result {
    Real value;       // the partial sum actually used
    Real tail_bound;  // certified bound on the dropped tail
    long terms = 0;   // terms summed (j = 2 .. 2 + terms - 1)
};

// A0(t1) with certified truncation <= tol: terms decay at least
// geometrically with ratio e^{-delta_J t1} once j >= J, so the cut
// happens when the next term drops below tol * partial * 1e-2 and the
// remaining tail is dominated by that geometric series.
A0Result a0_constant(const OperatorSpec& spec, const Real& t1, double tol,
                     mpfr_prec_t prec = 192);

// Working precision the recursion refuses to run below:
// ceil(max_k |lambda(k)| t_{n-k+1} / ln 2) + 64.  The exponentials
// amplify by e^{|lambda(k)| t}; fewer bits than that and the samples'
// information is gone before the subtraction happens.
long recovery_gate_bits(const OperatorSpec& spec,
                        const std::vector<Real>& times);

struct CoefficientRecovery {
    std::vector<Real> c_bar;
    std::vector<Real> arith_budget;  // certified |returned - exact recursion on true samples|
    long mantissa_bits = 0;
};

// The backward recursion over all n samples.  For a rescaled trace the
// recursion runs against the heat spectrum at the effective times b(t_j),
// and the b certificates are folded into the budget.  Throws
// PrecisionInsufficient when the trace's mantissa_bits miss the gate.
CoefficientRecovery recover_coefficients(const Trace& trace,
                                         const OperatorSpec& spec);

// f_n: coefficients f_k = c_k / sin(k x0) for k = 1..m = ceil(n/2), zeros
// beyond.  The plan's scan guarantees |sin(k x0)| >= d0/k > 0.
InitialDatum reconstruct(const std::vector<Real>& c_bar,
                         const SamplingPlan& plan);

// bound_k = A0(t1) 2^k e^{-delta_k t_{n-k+1}}, k = 1..n; in the rescaled
// case the heat form A0(b(t1)) 2^k e^{-(2k+1) b(t_{n-k+1})} with the
// certified lower ends of the b values, so the reported bound is itself a
// true upper bound.  a0_tol controls the A0 truncation; its tail is added.
std::vector<Real> apriori_error_bounds(const OperatorSpec& spec,
                                       const SamplingPlan& plan,
                                       double a0_tol = 1e-40,
                                       mpfr_prec_t prec = 192);

struct OneSampleResult {
    Real c1;      // e^{t1} F(t1)
    Real c2;      // e^{4 t1} F(t1) - c1 e^{3 t1}
    Real bound1;  // 2^{-r} e^{-3 t1} / (1 - e^{-t1})
    Real bound2;  // 2^{-r} (1 + e^{-5 t1}) / (1 - e^{-t1})
};

// Heat-only shortcut: two coefficients out of a single sample, with the
// closed-form error bounds for data in F_r.
OneSampleResult one_sample_two_coeffs(const Real& u1, const Real& t1,
                                      const Real& x0, double r,
                                      mpfr_prec_t prec = 256);

struct OracleRecovery {
    std::vector<Real> c;
    Real inv_norm;  // infinity norm of M^{-1}, from the explicit inverse
    Real budget;    // inv_norm * (sample certs) + elimination rounding
    long mantissa_bits = 0;
};

// Brute-force check: solve M c = u, M_{ij} = e^{lambda(j) t_i}, by full
// pivoting at twice the trace precision.  Independent of the recursion;
// agreement within both budgets is what the equivalence tests certify.
// Throws IllConditioned when a pivot underflows the working precision.
OracleRecovery oracle_recover(const Trace& trace, const OperatorSpec& spec,
                              long n);

// Everything one recovery produces, assembled by the pipeline: the
// recursion output, the reconstruction, the a-priori bounds, the
// arithmetic ledger, and (when the synthetic truth is known) the realized
// error and worst bound violation max_k(|c_k - c_bar_k| - bound_k).
struct RecoveryResult {
    long n = 0;
    long m = 0;
    std::vector<Real> c_bar;
    std::vector<Real> f_bar;
    std::vector<Real> apriori_bounds;
    std::vector<Real> arith_budget;
    long mantissa_bits = 0;
    bool truth_known = false;
    Real l2_error{64};
    Real max_bound_violation{64};
};

// Mantissa bits needed so the recursion's whole arithmetic ledger stays
// below theta times the smallest a-priori bound it will be compared to,
// for a datum in the F_r ball with K modes sampled at tolerance-driven
// certificates.  Solved from the ledger recurrence in log2 space; doubles
// suffice because only exponents are tracked.
//
// lg_floor caps how small a resolution target any single mode may impose:
// the per-mode target is theta * max(bound_k, 2^lg_floor).  The default
// (-inf) resolves every bound exactly; rate sweeps pass a finite floor
// because bounds like e^{-delta_k t_n} shrink doubly exponentially in n
// while the reported l2 error never drops below the truncation scale.
long plan_precision_bits(const OperatorSpec& spec, const SamplingPlan& plan,
                         double r, long K_modes, double theta = 1e-3,
                         double lg_floor = -std::numeric_limits<double>::infinity());

}  // namespace dynsamp
