#include "dynsamp/operator_spectrum.hpp"

#include <cmath>

#include "dynsamp/errors.hpp"

namespace dynsamp {

namespace {

using uint128 = unsigned __int128;

uint128 ipow(uint128 base, int e) {
    uint128 r = 1;
    while (e-- > 0) r *= base;
    return r;
}

}  // namespace

OperatorSpec validate_coefficients(const std::vector<double>& coeffs) {
    if (coeffs.empty()) throw EmptyCoefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const int l = static_cast<int>(i) + 1;
        const double a = coeffs[i];
        if (!std::isfinite(a) || a == 0.0 || ((l % 2 == 1) ? a < 0 : a > 0))
            throw SignPatternViolation(l, a);
    }
    return OperatorSpec{static_cast<int>(coeffs.size()), coeffs};
}

Real lambda_of(const OperatorSpec& spec, long k, mpfr_prec_t prec) {
    // alpha_{2l} is a double (53-bit dyadic) and k^{2l} has at most
    // 2N log2(k+1) bits, so this width makes each term and the short sum
    // of same-sign terms exact before the single final rounding.
    const mpfr_prec_t wide =
        64 + 2 * spec.order_half *
                 static_cast<mpfr_prec_t>(std::ceil(std::log2(static_cast<double>(k) + 1.0))) +
        8;
    Real acc(wide > prec ? wide : prec);
    Real kp(1L, acc.prec());
    const Real kr(k, acc.prec());
    for (int l = 1; l <= spec.order_half; ++l) {
        kp *= kr;
        kp *= kr;  // kp = k^{2l}
        const double signed_coeff = (l % 2 == 1) ? -spec.coeffs[l - 1] : spec.coeffs[l - 1];
        acc += Real(signed_coeff, acc.prec()) * kp;
    }
    return acc.rounded_to(prec);
}

double lambda_of_d(const OperatorSpec& spec, long k) {
    double acc = 0.0;
    double kp = 1.0;
    const double kd = static_cast<double>(k);
    for (int l = 1; l <= spec.order_half; ++l) {
        kp *= kd * kd;
        acc += ((l % 2 == 1) ? -spec.coeffs[l - 1] : spec.coeffs[l - 1]) * kp;
    }
    return acc;
}

SpectralGap spectral_gap(const OperatorSpec& spec, long k, mpfr_prec_t prec) {
    return SpectralGap{k, lambda_of(spec, k, prec) - lambda_of(spec, k + 1, prec)};
}

Real min_gap(const OperatorSpec& spec, long m, mpfr_prec_t prec) {
    Real best = spectral_gap(spec, 1, prec).delta;
    for (long k = 2; k <= m; ++k) best = min(best, spectral_gap(spec, k, prec).delta);
    return best;
}

double rho_threshold(const OperatorSpec& spec) {
    return 2.0 * spec.order_half * std::log(2.0);
}

double certified_rho_threshold(const OperatorSpec& spec) {
    return std::ldexp(1.0, 2 * spec.order_half);  // 4^N, exact
}

GridCheckReport check_g_bound(int N, long x_max, std::optional<double> threshold) {
    GridCheckReport rep;
    rep.threshold = threshold.value_or(2.0 * N * std::log(2.0));
    rep.max_value = 0.0;
    for (long x = 2; x <= x_max; ++x) {
        for (long y = 1; y <= x - 1; ++y) {
            const uint128 num = ipow(static_cast<uint128>(x + 1), 2 * N) -
                                ipow(static_cast<uint128>(y), 2 * N);
            const uint128 den = ipow(static_cast<uint128>(y + 1), 2 * N) -
                                ipow(static_cast<uint128>(y), 2 * N);
            const double g = std::log(static_cast<double>(num) / static_cast<double>(den)) /
                             static_cast<double>(x - y);
            ++rep.points_checked;
            if (g > rep.max_value) {
                rep.max_value = g;
                rep.arg_x = x;
                rep.arg_y = y;
            }
            if (g >= rep.threshold) ++rep.violations;  // strict bound required
        }
    }
    rep.pass = rep.violations == 0 && rep.points_checked > 0;
    return rep;
}

PowerCheckReport check_power_inequalities(long k_max, int l_max) {
    PowerCheckReport rep;
    // (i) b^l - a^l > b^j - a^j, strict, exact integers.
    for (long a = 1; a < k_max; ++a)
        for (long b = a + 1; b <= k_max; ++b)
            for (int j = 1; j < l_max; ++j)
                for (int l = j + 1; l <= l_max; ++l) {
                    ++rep.checked;
                    if (ipow(b, l) - ipow(a, l) <= ipow(b, j) - ipow(a, j)) {
                        rep.first_counterexample = "difference: a=" + std::to_string(a) +
                                                   " b=" + std::to_string(b) +
                                                   " j=" + std::to_string(j) +
                                                   " l=" + std::to_string(l);
                        return rep;
                    }
                }
    // (ii) cross-multiplied ratio comparison, exact integers.
    for (long k = 2; k <= k_max; ++k)
        for (long j = 1; j <= k - 1; ++j)
            for (int m = 1; m < l_max; ++m)
                for (int l = m + 1; l <= l_max; ++l) {
                    ++rep.checked;
                    const uint128 lhs = (ipow(k + 1, l) - ipow(j, l)) * (ipow(j + 1, m) - ipow(j, m));
                    const uint128 rhs = (ipow(k + 1, m) - ipow(j, m)) * (ipow(j + 1, l) - ipow(j, l));
                    if (lhs < rhs) {
                        rep.first_counterexample = "ratio: k=" + std::to_string(k) +
                                                   " j=" + std::to_string(j) +
                                                   " m=" + std::to_string(m) +
                                                   " l=" + std::to_string(l);
                        return rep;
                    }
                }
    rep.pass = true;
    return rep;
}

}  // namespace dynsamp
