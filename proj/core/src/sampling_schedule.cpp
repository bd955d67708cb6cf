#include "dynsamp/sampling_schedule.hpp"

#include <algorithm>
#include <cmath>

#include "dynsamp/errors.hpp"

namespace dynsamp {

double scan_sampling_point(const Real& x0, long K_scan) {
    if (K_scan < 1) throw Error("K_scan must be >= 1");
    const mpfr_prec_t p = x0.prec();
    const Real floor_val = ldexp(Real(1L, p), -static_cast<long>(p / 2));
    Real s = sin(x0);
    Real s_prev(p);
    const Real two_cos = Real(2L, p) * cos(x0);
    double d0 = 0.0;
    for (long k = 1; k <= K_scan; ++k) {
        const Real mag = abs(s);
        if (mag < floor_val) throw ResonantPoint(k);
        const double v = static_cast<double>(k) * mag.to_double();
        if (k == 1 || v < d0) d0 = v;
        Real next = two_cos * s - s_prev;
        s_prev = std::move(s);
        s = std::move(next);
    }
    return d0;
}

std::vector<Real> geometric_times(const Real& t1, double rho, long n,
                                  const OperatorSpec& spec, mpfr_prec_t prec) {
    if (n < 1) throw Error("need n >= 1 sampling times");
    if (!(t1.sign() > 0)) throw Error("t1 must be positive");
    const double gate = rho_threshold(spec);
    if (!std::isfinite(rho) || !(rho > gate)) throw RhoBelowThreshold(rho, gate);
    mpfr_prec_t p = std::max<mpfr_prec_t>(prec, 53 * (n + 1) + 64);
    p = std::max(p, t1.prec());
    std::vector<Real> times;
    times.reserve(static_cast<std::size_t>(n));
    times.push_back(t1.rounded_to(p));
    const Real ratio(rho, p);
    for (long j = 1; j < n; ++j) times.push_back(times.back() * ratio);
    return times;
}

namespace {

// b(t) - cert >= target, i.e. the true b(t) certainly clears the target.
bool certified_above(const DiffusivityProfile& profile, const Real& t,
                     const Real& target, mpfr_prec_t prec) {
    const BValue bv = accumulated_b(profile, t, prec);
    return bv.value - bv.cert >= target;
}

}  // namespace

RescaledTimes rescaled_times(const DiffusivityProfile& profile, const Real& t1,
                             double rho, long n, mpfr_prec_t prec) {
    if (n < 1) throw Error("need n >= 1 sampling times");
    if (!(t1.sign() > 0)) throw Error("t1 must be positive");
    const double gate = 2.0 * M_LN2;  // heat order: N = 1
    if (!std::isfinite(rho) || !(rho > gate)) throw RhoBelowThreshold(rho, gate);
    const mpfr_prec_t p = std::max<mpfr_prec_t>(prec, 256);

    RescaledTimes out;
    out.times.push_back(t1.rounded_to(p));
    const BValue b1 = accumulated_b(profile, out.times.front(), p);
    out.b_values.push_back(b1.value);
    out.b_certs.push_back(b1.cert);
    // Targets come off the certified upper end of b(t1), so meeting them
    // guarantees the true ratios.
    const Real b1_upper = b1.value + b1.cert;
    const Real ratio(rho, p);

    Real target = b1_upper;
    for (long j = 2; j <= n; ++j) {
        target *= ratio;
        Real lo = out.times.back();
        Real hi = lo * Real(2L, p);
        int doublings = 0;
        while (!certified_above(profile, hi, target, p)) {
            hi *= Real(2L, p);
            if (++doublings > 200)
                throw RootBracketFailure("no horizon brackets b(t) target after 200 doublings");
        }
        const Real rel_floor = ldexp(Real(1L, p), -static_cast<long>(p / 2));
        while (hi - lo > hi * rel_floor) {
            const Real mid = (lo + hi) / Real(2L, p);
            if (certified_above(profile, mid, target, p))
                hi = mid;
            else
                lo = mid;
        }
        const BValue bj = accumulated_b(profile, hi, p);
        out.times.push_back(hi);
        out.b_values.push_back(bj.value);
        out.b_certs.push_back(bj.cert);
    }
    return out;
}

SamplingPlan make_autonomous_plan(const OperatorSpec& spec, const Real& x0,
                                  long K_scan, const Real& t1, double rho,
                                  long n) {
    SamplingPlan plan;
    plan.times = geometric_times(t1, rho, n, spec);
    plan.d0 = scan_sampling_point(x0, K_scan);
    plan.x0 = x0;
    plan.K_scan = K_scan;
    plan.rho = rho;
    plan.n = n;
    plan.prec = plan.times.front().prec();
    return plan;
}

SamplingPlan make_rescaled_plan(const DiffusivityProfile& profile, const Real& x0,
                                long K_scan, const Real& t1, double rho, long n,
                                mpfr_prec_t prec) {
    SamplingPlan plan;
    RescaledTimes rt = rescaled_times(profile, t1, rho, n, prec);
    plan.d0 = scan_sampling_point(x0, K_scan);
    plan.x0 = x0;
    plan.K_scan = K_scan;
    plan.rho = rho;
    plan.n = n;
    plan.times = std::move(rt.times);
    plan.rescaled = true;
    plan.profile = profile;
    plan.b_values = std::move(rt.b_values);
    plan.b_certs = std::move(rt.b_certs);
    plan.prec = plan.times.front().prec();
    return plan;
}

}  // namespace dynsamp
