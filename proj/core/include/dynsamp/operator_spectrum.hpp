#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynsamp/real.hpp"

// Spatial operator L = sum_l alpha_{2l} d^{2l}/dx^{2l} on (0,pi) with
// Dirichlet conditions.  Its sine-mode eigenvalues are
//
//   lambda(k) = sum_{l=1}^{N} (-1)^l alpha_{2l} k^{2l},
//
// and the alternating sign pattern alpha_{2l} > 0 (l odd), < 0 (l even)
// makes every polynomial term negative, so lambda is strictly decreasing
// and unbounded below.  The spectral gaps delta_k = lambda(k) - lambda(k+1)
// drive every error bound downstream.  Also hosted here: grid verification
// of the combinatorial inequalities the sampling analysis rests on.

namespace dynsamp {

struct OperatorSpec {
    int order_half = 0;          // N; the PDE's spatial order is 2N
    std::vector<double> coeffs;  // alpha_{2l}, l = 1..N
};

struct SpectralGap {
    long k = 0;
    Real delta;
};

// Validates the sign pattern and returns the spec.  Throws
// EmptyCoefficients, or SignPatternViolation naming the first bad index.
OperatorSpec validate_coefficients(const std::vector<double>& coeffs);

// lambda(k) at the requested precision.  The monomials are accumulated at a
// widened precision where every product of a dyadic coefficient with an
// exact integer power is exact, then rounded once; the gaps enter exponents,
// so no spurious monotonicity failures can creep in here.
Real lambda_of(const OperatorSpec& spec, long k, mpfr_prec_t prec);

// Same value in double, for schedule/precision planning arithmetic.
double lambda_of_d(const OperatorSpec& spec, long k);

// delta_k = lambda(k) - lambda(k+1) > 0.
SpectralGap spectral_gap(const OperatorSpec& spec, long k, mpfr_prec_t prec);

// Delta = min_{k<=m} delta_k (the gaps are nondecreasing, but we scan).
Real min_gap(const OperatorSpec& spec, long m, mpfr_prec_t prec);

// Admissibility threshold for the geometric time ratio: 2N ln 2.  Depends
// only on the order, never on the coefficient values.
double rho_threshold(const OperatorSpec& spec);

// Ratio above which the recursive a-priori error bounds are certified:
// e^{2N ln 2} = 4^N.  The bound chain needs rho^{k-j} to dominate gap
// ratios whose logarithm reaches 2N ln 2, i.e. ln rho > 2N ln 2; the
// smaller rho_threshold() is necessary for admissibility but does not by
// itself close the bound induction.
double certified_rho_threshold(const OperatorSpec& spec);

struct GridCheckReport {
    bool pass = false;
    double threshold = 0.0;
    double max_value = 0.0;  // max of g over the grid
    long arg_x = 0, arg_y = 0;
    long points_checked = 0;
    long violations = 0;
};

// Scans g(x,y) = (x-y)^{-1} ln(((x+1)^{2N} - y^{2N}) / ((y+1)^{2N} - y^{2N}))
// over the integer grid 2 <= x <= x_max, 1 <= y <= x-1 and checks the strict
// bound g < threshold (default 2N ln 2).  Integer powers are exact in
// 128-bit arithmetic; only the final logarithm rounds.
GridCheckReport check_g_bound(int N, long x_max,
                              std::optional<double> threshold = std::nullopt);

struct PowerCheckReport {
    bool pass = false;
    long checked = 0;
    std::string first_counterexample;  // empty when pass
};

// Exhaustive integer-grid checks of the two power inequalities:
//   (i)  b^l - a^l > b^j - a^j          for l > j >= 1, 1 <= a < b <= k_max;
//   (ii) ((k+1)^l - j^l)/((j+1)^l - j^l) >= ((k+1)^m - j^m)/((j+1)^m - j^m)
//        for l >= m+1 >= 2, k-1 >= j >= 1, k <= k_max, l <= l_max.
// (ii) is checked by exact cross-multiplication in 128-bit integers.
PowerCheckReport check_power_inequalities(long k_max, int l_max);

}  // namespace dynsamp
