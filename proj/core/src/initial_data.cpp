#include "dynsamp/initial_data.hpp"

#include <cmath>
#include <random>

#include "dynsamp/errors.hpp"

namespace dynsamp {

Real ball_norm(const InitialDatum& f, mpfr_prec_t prec) {
    Real acc(prec);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        const long k = static_cast<long>(i) + 1;
        const Real w = pow(Real(k, prec), Real(2.0 * f.smoothness_r, prec));
        acc += w * f.coeffs[i] * f.coeffs[i];
    }
    return sqrt(acc);
}

Real l2_distance(const InitialDatum& f, const InitialDatum& g, mpfr_prec_t prec) {
    const std::size_t K = std::max(f.coeffs.size(), g.coeffs.size());
    Real acc(prec);
    for (std::size_t i = 0; i < K; ++i) {
        Real d(prec);
        if (i < f.coeffs.size()) d += f.coeffs[i];
        if (i < g.coeffs.size()) d -= g.coeffs[i];
        acc += d * d;
    }
    return sqrt(Real::pi(prec) / 2L * acc);
}

InitialDatum random_ball_member(double r, long K, double margin,
                                std::uint64_t seed, mpfr_prec_t prec) {
    if (K < 1 || margin <= 0.0 || margin >= 1.0)
        throw Error("random_ball_member: need K >= 1 and margin in (0,1)");
    std::mt19937_64 rng(seed);
    InitialDatum f;
    f.smoothness_r = r;
    f.coeffs.reserve(static_cast<std::size_t>(K));
    for (long k = 1; k <= K; ++k) {
        const std::uint64_t w1 = rng();
        const std::uint64_t w2 = rng();
        const double u = static_cast<double>(w2 >> 11) * 0x1p-53;
        Real mag = Real(0.5 + 0.5 * u, prec) *
                   pow(Real(k, prec), Real(-(r + 1.0), prec));
        f.coeffs.push_back((w1 & 1) ? -mag : mag);
    }
    const Real scale = Real(margin, prec) / ball_norm(f, prec);
    for (Real& c : f.coeffs) c *= scale;
    f.declared_ball = true;
    return f;
}

double truncation_tail_bound(const InitialDatum& f, long n) {
    return std::pow(static_cast<double>(n), -f.smoothness_r);
}

}  // namespace dynsamp
