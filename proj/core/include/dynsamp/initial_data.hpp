#pragma once

#include <cstdint>
#include <vector>

#include "dynsamp/real.hpp"

// Initial data f as a finite Fourier sine expansion f = sum f_k sin(kx) on
// (0,pi).  Smoothness is tracked through the ball F_r = {sum k^{2r} f_k^2
// <= 1}; membership gives the mode-size bound |f_k| <= k^{-r} and the
// truncation tail n^{-r} that the rate experiments compare against.
// Norms are Parseval sums, exact for finite support.

namespace dynsamp {

struct InitialDatum {
    std::vector<Real> coeffs;   // f_k, k = 1..K
    double smoothness_r = 0.0;  // the r of the ball the datum is measured in
    bool declared_ball = false; // asserts ball_norm <= 1
};

// (sum_k k^{2r} f_k^2)^{1/2}; membership in F_r iff <= 1.
Real ball_norm(const InitialDatum& f, mpfr_prec_t prec = 192);

// ((pi/2) sum_k (f_k - g_k)^2)^{1/2}, shorter support zero-padded.
Real l2_distance(const InitialDatum& f, const InitialDatum& g,
                 mpfr_prec_t prec = 192);

// Deterministic random element of F_r with ball_norm exactly `margin`.
// Draw recipe (fixed, part of the reproducibility contract): one mt19937_64
// stream seeded with `seed`; per mode k, word w1 gives the sign (w1 & 1) and
// word w2 gives u = (w2 >> 11) * 2^-53 in [0,1); the raw magnitude is
// (0.5 + 0.5u) * k^{-(r+1)}, and the whole vector is rescaled once so the
// ball norm equals margin.  All arithmetic in MPFR at `prec` bits, so the
// values are platform-independent.
InitialDatum random_ball_member(double r, long K, double margin,
                                std::uint64_t seed, mpfr_prec_t prec = 192);

// Guaranteed bound n^{-r} on the (pi/2-normalized) L2 tail beyond mode n for
// any member of F_r.
double truncation_tail_bound(const InitialDatum& f, long n);

}  // namespace dynsamp
