#include "dynsamp/forward_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include "dynsamp/errors.hpp"

namespace dynsamp {

// ---------------------------------------------------------------------------
// Diffusivity profiles

DiffusivityProfile constant_profile(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw Error("constant profile needs c > 0");
    DiffusivityProfile p;
    p.kind = DiffusivityProfile::Kind::Constant;
    p.c = c;
    p.lower_bound = c;
    return p;
}

DiffusivityProfile affine_profile(double a, double b) {
    if (!(a > 0.0) || b < 0.0 || !std::isfinite(a) || !std::isfinite(b))
        throw Error("affine profile needs a > 0 and b >= 0");
    DiffusivityProfile p;
    p.kind = DiffusivityProfile::Kind::Affine;
    p.a = a;
    p.b = b;
    p.lower_bound = a;
    return p;
}

DiffusivityProfile sinusoidal_profile(double a, double b, double omega) {
    if (!(a > std::abs(b)) || omega == 0.0 || !std::isfinite(a + b + omega))
        throw Error("sinusoidal profile needs a > |b| and omega != 0");
    DiffusivityProfile p;
    p.kind = DiffusivityProfile::Kind::Sinusoidal;
    p.a = a;
    p.b = b;
    p.omega = omega;
    p.lower_bound = a - std::abs(b);
    return p;
}

DiffusivityProfile tabulated_profile(std::vector<double> t, std::vector<double> alpha) {
    if (t.size() != alpha.size() || t.empty())
        throw Error("tabulated profile needs matching nonempty knot lists");
    if (t.front() != 0.0) throw Error("tabulated profile must start at t = 0");
    double lo = alpha.front();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0 && !(t[i] > t[i - 1])) throw Error("tabulated knots must increase strictly");
        if (!(alpha[i] > 0.0)) throw Error("tabulated profile needs alpha > 0 at every knot");
        lo = std::min(lo, alpha[i]);
    }
    DiffusivityProfile p;
    p.kind = DiffusivityProfile::Kind::Tabulated;
    p.knot_t = std::move(t);
    p.knot_alpha = std::move(alpha);
    p.lower_bound = lo;
    return p;
}

double alpha_at(const DiffusivityProfile& p, double t) {
    switch (p.kind) {
        case DiffusivityProfile::Kind::Constant:
            return p.c;
        case DiffusivityProfile::Kind::Affine:
            return p.a + p.b * t;
        case DiffusivityProfile::Kind::Sinusoidal:
            return p.a + p.b * std::sin(p.omega * t);
        case DiffusivityProfile::Kind::Tabulated: {
            if (t >= p.knot_t.back()) return p.knot_alpha.back();
            auto it = std::upper_bound(p.knot_t.begin(), p.knot_t.end(), t);
            const std::size_t i = static_cast<std::size_t>(it - p.knot_t.begin());
            if (i == 0) return p.knot_alpha.front();
            const double w = (t - p.knot_t[i - 1]) / (p.knot_t[i] - p.knot_t[i - 1]);
            return p.knot_alpha[i - 1] + w * (p.knot_alpha[i] - p.knot_alpha[i - 1]);
        }
    }
    return 0.0;
}

BValue accumulated_b(const DiffusivityProfile& p, const Real& t, mpfr_prec_t prec) {
    const Real tt = t.rounded_to(prec);
    Real value(prec);
    double mag = 0.0;  // sum of intermediate magnitudes, for the rounding cert
    double ops = 4.0;
    const double td = std::abs(t.to_double());
    switch (p.kind) {
        case DiffusivityProfile::Kind::Constant:
            value = Real(p.c, prec) * tt;
            mag = std::abs(p.c) * td;
            break;
        case DiffusivityProfile::Kind::Affine:
            value = Real(p.a, prec) * tt + Real(0.5 * p.b, prec) * tt * tt;
            mag = std::abs(p.a) * td + 0.5 * std::abs(p.b) * td * td;
            ops = 8.0;
            break;
        case DiffusivityProfile::Kind::Sinusoidal: {
            // b(t) = a t + (b/omega)(1 - cos(omega t))
            const Real theta = Real(p.omega, prec) * tt;
            value = Real(p.a, prec) * tt +
                    Real(p.b / p.omega, prec) * (Real(1L, prec) - cos(theta));
            mag = std::abs(p.a) * td + 2.0 * std::abs(p.b / p.omega);
            // cos argument rounding feeds through with weight |omega t|
            ops = 12.0 + std::abs(p.omega) * td;
            break;
        }
        case DiffusivityProfile::Kind::Tabulated: {
            // exact trapezoid integral of the piecewise-linear interpolant
            Real acc(prec);
            double magacc = 0.0;
            const double tdv = t.to_double();
            std::size_t i = 1;
            for (; i < p.knot_t.size() && Real(p.knot_t[i], prec) <= tt; ++i) {
                const double h = p.knot_t[i] - p.knot_t[i - 1];
                acc += Real(0.5 * h, prec) *
                       (Real(p.knot_alpha[i - 1], prec) + Real(p.knot_alpha[i], prec));
                magacc += 0.5 * h * (p.knot_alpha[i - 1] + p.knot_alpha[i]);
            }
            const double t0 = p.knot_t[i - 1];
            if (tdv > t0) {
                const Real dt = tt - Real(t0, prec);
                const double a0 = alpha_at(p, t0);
                const double a1 = alpha_at(p, tdv);
                acc += dt * Real(0.5, prec) * (Real(a0, prec) + Real(a1, prec));
                magacc += (tdv - t0) * 0.5 * (a0 + a1);
            }
            value = acc;
            mag = magacc;
            ops = 6.0 * static_cast<double>(p.knot_t.size()) + 8.0;
            break;
        }
    }
    BValue out;
    out.value = value;
    out.cert = ldexp(Real(2.0 * ops * std::max(mag, 1e-300), 64), -static_cast<long>(prec));
    return out;
}

// ---------------------------------------------------------------------------
// Certified series evaluation

long default_precision_ceiling() {
    if (const char* env = std::getenv("DYNSAMP_PREC_CEILING")) {
        const long v = std::atol(env);
        if (v > 0) return v;
    }
    return 4000000;
}

namespace {

// e^{lambda(k) t}, k = 1..K.  Seeds k <= 2N+1 are direct exponentials; the
// rest come from the finite-difference ratio ladder (lambda is a degree-2N
// polynomial in k, so the level-2N ratio is constant in k).
std::vector<Real> exp_lambda_row(const OperatorSpec& spec, const Real& t, long K,
                                 mpfr_prec_t p) {
    const long depth = 2L * spec.order_half;
    const long seeds = std::min(depth + 1, K);
    std::vector<Real> row;
    row.reserve(static_cast<std::size_t>(K));
    std::vector<Real> seed_vals;
    for (long k = 1; k <= seeds; ++k)
        seed_vals.push_back(exp(lambda_of(spec, k, p) * t));
    for (const Real& v : seed_vals) row.push_back(v);
    if (K <= seeds) {
        row.resize(static_cast<std::size_t>(K), Real(p));
        return row;
    }
    // Left column of the difference pyramid: r[j] = level-j ratio at k = 1.
    std::vector<Real> ladder;  // ladder[j-1] = r_j
    std::vector<Real> cur = seed_vals;
    for (long j = 1; j <= depth; ++j) {
        std::vector<Real> next;
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) next.push_back(cur[i + 1] / cur[i]);
        ladder.push_back(next.front());
        cur = std::move(next);
    }
    // Roll forward: v(k+1) = v(k) r_1(k), r_j(k+1) = r_j(k) r_{j+1}(k).
    Real v = seed_vals.front();
    row.clear();
    row.push_back(v);
    for (long k = 1; k < K; ++k) {
        v *= ladder[0];
        row.push_back(v);
        for (std::size_t j = 0; j + 1 < ladder.size(); ++j) ladder[j] *= ladder[j + 1];
    }
    return row;
}

// sin(kx), k = 1..K, via sin((k+1)x) = 2cos(x) sin(kx) - sin((k-1)x).
std::vector<Real> sin_row(const Real& x, long K, mpfr_prec_t p) {
    std::vector<Real> row;
    row.reserve(static_cast<std::size_t>(K));
    const Real xx = x.rounded_to(p);
    Real s = sin(xx);
    Real s_prev(p);  // sin(0 x) = 0
    const Real two_cos = Real(2L, p) * cos(xx);
    for (long k = 1; k <= K; ++k) {
        row.push_back(s);
        Real next = two_cos * s - s_prev;
        s_prev = std::move(s);
        s = std::move(next);
    }
    return row;
}

double sum_abs_coeffs(const InitialDatum& f) {
    double s = 0.0;
    for (const Real& c : f.coeffs) s += std::abs(c.to_double());
    return s;
}

// Rounding-error coefficient C with |computed - exact| <= C 2^{-p}:
// seed exponentials carry |lambda t| u, the ladders add O(N k) u and the
// sine recurrence O(k/|sin x|) u, the final dot product and summation O(K) u.
double rounding_coefficient(const OperatorSpec& spec, const InitialDatum& f,
                            double abs_sin_x, double seed_arg, double extra_per_k) {
    const double N = spec.order_half;
    const double d = std::max(abs_sin_x, 1e-9);
    double C = 0.0;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        C += std::abs(f.coeffs[i].to_double()) *
             (seed_arg + 2.0 * N * k + 3.0 * k / d + 4.0 * N * N +
              static_cast<double>(f.coeffs.size()) + 16.0 + extra_per_k * k * k);
    }
    return std::max(C, 1e-300);
}

mpfr_prec_t pick_precision(double C, double tol, const EvalOptions& opts) {
    const long ceiling = opts.ceiling_bits > 0 ? opts.ceiling_bits : default_precision_ceiling();
    // cert = C 2^{-p} <= tol/10
    long p = static_cast<long>(std::ceil(std::log2(C * 10.0 / tol))) + 4;
    p = std::max({p, opts.min_bits, 192L});
    if (p > ceiling) throw TolUnachievable(p, ceiling);
    return static_cast<mpfr_prec_t>(p);
}

EvalResult evaluate_rows(const InitialDatum& f, const std::vector<Real>& decay,
                         const std::vector<Real>& sines, double C, mpfr_prec_t p) {
    Real acc(p);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        acc += f.coeffs[i] * decay[i] * sines[i];
    EvalResult out;
    out.value = std::move(acc);
    out.cert = ldexp(Real(C, 64), -static_cast<long>(p));
    out.mantissa_bits = static_cast<long>(p);
    return out;
}

}  // namespace

EvalResult evaluate_solution(const OperatorSpec& spec, const InitialDatum& f,
                             const Real& x, const Real& t, double tol,
                             const EvalOptions& opts) {
    const long K = static_cast<long>(f.coeffs.size());
    if (K == 0) {
        const long p0 = std::max(opts.min_bits, 192L);
        return EvalResult{Real(static_cast<mpfr_prec_t>(p0)), Real(64), p0};
    }
    const long seeds = std::min(2L * spec.order_half + 1, K);
    const double seed_arg =
        std::abs(lambda_of_d(spec, seeds)) * std::abs(t.to_double()) + 4.0;
    const double C =
        rounding_coefficient(spec, f, std::abs(std::sin(x.to_double())), seed_arg, 0.0);
    const mpfr_prec_t p = pick_precision(C, tol, opts);
    const std::vector<Real> decay = exp_lambda_row(spec, t.rounded_to(p), K, p);
    const std::vector<Real> sines = sin_row(x, K, p);
    return evaluate_rows(f, decay, sines, C, p);
}

EvalResult evaluate_nonautonomous(const DiffusivityProfile& profile,
                                  const InitialDatum& f, const Real& x,
                                  const Real& t, double tol,
                                  const EvalOptions& opts) {
    const long K = static_cast<long>(f.coeffs.size());
    if (K == 0) {
        const long p0 = std::max(opts.min_bits, 192L);
        return EvalResult{Real(static_cast<mpfr_prec_t>(p0)), Real(64), p0};
    }
    // Coarse pass to size C_b, then the real b at the chosen precision.
    const BValue coarse = accumulated_b(profile, t, 192);
    const double C_b = coarse.cert.to_double() * std::pow(2.0, 192.0);
    const double seed_arg = 9.0 * std::abs(coarse.value.to_double()) + 4.0;
    static const OperatorSpec heat{1, {1.0}};
    const double C = rounding_coefficient(heat, f, std::abs(std::sin(x.to_double())),
                                          seed_arg, C_b);
    const mpfr_prec_t p = pick_precision(C, tol, opts);
    const BValue bv = accumulated_b(profile, t, p);
    const std::vector<Real> decay = exp_lambda_row(heat, bv.value, K, p);
    const std::vector<Real> sines = sin_row(x, K, p);
    return evaluate_rows(f, decay, sines, C, p);
}

namespace {

void apply_noise(Trace& tr, double magnitude, std::uint64_t seed) {
    if (magnitude <= 0.0) return;
    std::mt19937_64 rng(seed);
    for (Real& s : tr.samples) {
        const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
        s += Real(magnitude * (2.0 * u - 1.0), s.prec());
    }
    tr.noise_magnitude = magnitude;
    tr.noise_seed = seed;
}

}  // namespace

Trace sample_trace(const OperatorSpec& spec, const InitialDatum& f,
                   const SamplingPlan& plan, double tol, long min_bits,
                   double noise_magnitude, std::uint64_t noise_seed) {
    Trace tr;
    tr.x0 = plan.x0;
    tr.times = plan.times;
    EvalOptions opts;
    opts.min_bits = min_bits;
    for (const Real& t : plan.times) {
        EvalResult r = evaluate_solution(spec, f, plan.x0, t, tol, opts);
        tr.samples.push_back(std::move(r.value));
        tr.sample_certs.push_back(std::move(r.cert));
        tr.mantissa_bits = std::max(tr.mantissa_bits, r.mantissa_bits);
        opts.min_bits = std::max(opts.min_bits, r.mantissa_bits);  // one precision per trace
    }
    apply_noise(tr, noise_magnitude, noise_seed);
    return tr;
}

Trace sample_trace(const DiffusivityProfile& profile, const InitialDatum& f,
                   const SamplingPlan& plan, double tol, long min_bits,
                   double noise_magnitude, std::uint64_t noise_seed) {
    Trace tr;
    tr.x0 = plan.x0;
    tr.times = plan.times;
    tr.rescaled = true;
    EvalOptions opts;
    opts.min_bits = min_bits;
    for (const Real& t : plan.times) {
        EvalResult r = evaluate_nonautonomous(profile, f, plan.x0, t, tol, opts);
        opts.min_bits = std::max(opts.min_bits, r.mantissa_bits);
        const BValue bv = accumulated_b(profile, t, static_cast<mpfr_prec_t>(r.mantissa_bits));
        tr.samples.push_back(std::move(r.value));
        tr.sample_certs.push_back(std::move(r.cert));
        tr.effective_times.push_back(bv.value);
        tr.effective_certs.push_back(bv.cert);
        tr.mantissa_bits = std::max(tr.mantissa_bits, r.mantissa_bits);
    }
    apply_noise(tr, noise_magnitude, noise_seed);
    return tr;
}

Real tail_envelope(const OperatorSpec& spec, double r, long K, const Real& t,
                   mpfr_prec_t prec) {
    const Real tt = t.rounded_to(prec);
    const Real head = pow(Real(K + 1, prec), Real(-r, prec)) *
                      exp(lambda_of(spec, K + 1, prec) * tt);
    const Real q = exp(-spectral_gap(spec, K + 1, prec).delta * tt);
    return head / (Real(1L, prec) - q);
}

}  // namespace dynsamp
