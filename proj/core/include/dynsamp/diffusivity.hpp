#pragma once

#include <vector>

#include "dynsamp/real.hpp"

// Time-dependent diffusivity alpha(t) for the non-autonomous heat equation
// u_t = alpha(t) u_xx.  What the algorithms actually consume is the
// accumulated diffusivity b(t) = int_0^t alpha(s) ds, which is strictly
// increasing and unbounded because alpha stays above a positive floor.
// Every supported kind has a closed-form b (the tabulated kind is defined
// as the piecewise-linear interpolant of its knots, whose integral is the
// exact trapezoid sum), so the certificate only has to cover rounding.

namespace dynsamp {

struct DiffusivityProfile {
    enum class Kind { Constant, Affine, Sinusoidal, Tabulated };
    Kind kind = Kind::Constant;
    double c = 1.0;                    // Constant: alpha = c
    double a = 0.0, b = 0.0;           // Affine: a + b*t; Sinusoidal: a + b*sin(omega*t)
    double omega = 1.0;
    std::vector<double> knot_t;        // Tabulated: strictly increasing, knot_t[0] = 0
    std::vector<double> knot_alpha;    // alpha held constant beyond the last knot
    double lower_bound = 0.0;          // m with alpha(t) >= m > 0 for all t
};

// Factories validate positivity (alpha >= m > 0 on [0, inf)) and fill in
// the computable lower bound.  They throw Error on inadmissible parameters.
DiffusivityProfile constant_profile(double c);
DiffusivityProfile affine_profile(double a, double b);       // needs a > 0, b >= 0
DiffusivityProfile sinusoidal_profile(double a, double b, double omega);  // needs a > |b|
DiffusivityProfile tabulated_profile(std::vector<double> t, std::vector<double> alpha);

struct BValue {
    Real value;  // b(t)
    Real cert;   // absolute rounding bound: true b(t) in [value - cert, value + cert]
};

BValue accumulated_b(const DiffusivityProfile& profile, const Real& t, mpfr_prec_t prec);

// alpha(t) itself, used by root-finding diagnostics and validation.
double alpha_at(const DiffusivityProfile& profile, double t);

}  // namespace dynsamp
