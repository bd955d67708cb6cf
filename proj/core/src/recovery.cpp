#include "dynsamp/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dynsamp/errors.hpp"

namespace dynsamp {

namespace {

const OperatorSpec& heat_spec() {
    static const OperatorSpec heat{1, {1.0}};
    return heat;
}

// Recursion-side view of a trace: the autonomous problem recurses on the
// wall-clock times, the rescaled one on the effective times b(t_j) against
// the heat spectrum.
struct RecursionView {
    const OperatorSpec* spec = nullptr;
    const std::vector<Real>* times = nullptr;
    const std::vector<Real>* time_certs = nullptr;  // rescaled: b certificates
};

RecursionView recursion_view(const Trace& trace, const OperatorSpec& spec) {
    RecursionView v;
    if (trace.rescaled) {
        if (trace.effective_times.size() != trace.samples.size() ||
            trace.effective_certs.size() != trace.samples.size())
            throw Error("rescaled trace lacks effective times");
        v.spec = &heat_spec();
        v.times = &trace.effective_times;
        v.time_certs = &trace.effective_certs;
    } else {
        v.spec = &spec;
        v.times = &trace.times;
    }
    return v;
}

}  // namespace

A0Result a0_constant(const OperatorSpec& spec, const Real& t1, double tol,
                     mpfr_prec_t prec) {
    if (!(t1.sign() > 0)) throw Error("t1 must be positive");
    if (!(tol > 0.0)) throw Error("tol must be positive");
    const Real t = t1.rounded_to(prec);
    const Real lam2 = lambda_of(spec, 2, prec);
    A0Result out;
    out.value = Real(prec);
    const Real cut_scale(tol * 1e-2, 64);
    long j = 2;
    Real term = Real(1L, prec);  // j = 2 term
    for (;; ++j) {
        out.value += term;
        ++out.terms;
        Real next = exp((lambda_of(spec, j + 1, prec) - lam2) * t);
        if (next < cut_scale * out.value || out.terms >= 1000000) {
            // ratio of consecutive dropped terms <= e^{-delta_{j+1} t}
            const Real q = exp(-spectral_gap(spec, j + 1, prec).delta * t);
            out.tail_bound = next / (Real(1L, prec) - q);
            break;
        }
        term = std::move(next);
    }
    return out;
}

long recovery_gate_bits(const OperatorSpec& spec,
                        const std::vector<Real>& times) {
    const long n = static_cast<long>(times.size());
    double need = 0.0;
    for (long k = 1; k <= n; ++k) {
        const double a = std::abs(lambda_of_d(spec, k)) *
                         times[static_cast<std::size_t>(n - k)].to_double();
        need = std::max(need, a);
    }
    return static_cast<long>(std::ceil(need / M_LN2)) + 64;
}

CoefficientRecovery recover_coefficients(const Trace& trace,
                                         const OperatorSpec& spec) {
    const long n = static_cast<long>(trace.samples.size());
    if (n < 1) throw Error("trace has no samples");
    if (trace.times.size() != trace.samples.size() ||
        trace.sample_certs.size() != trace.samples.size())
        throw Error("trace fields disagree on the sample count");
    const RecursionView view = recursion_view(trace, spec);
    const std::vector<Real>& T = *view.times;

    const long need = recovery_gate_bits(*view.spec, T);
    if (trace.mantissa_bits < need)
        throw PrecisionInsufficient(trace.mantissa_bits, need);
    const mpfr_prec_t p = static_cast<mpfr_prec_t>(trace.mantissa_bits);

    CoefficientRecovery out;
    out.mantissa_bits = trace.mantissa_bits;
    std::vector<Real> lam;
    for (long k = 1; k <= n; ++k) lam.push_back(lambda_of(*view.spec, k, p));

    for (long k = 1; k <= n; ++k) {
        const std::size_t ti = static_cast<std::size_t>(n - k);  // t_{n-k+1}
        const Real& tk = T[ti];
        const Real Ek = exp(-(lam[static_cast<std::size_t>(k - 1)] * tk));
        Real ck = Ek * trace.samples[ti];
        // budget ledger at 64 bits: certificates ride the same exponentials
        Real budget = Ek.rounded_to(64) * trace.sample_certs[ti];
        Real mag = abs(ck).rounded_to(64);
        for (long j = 1; j < k; ++j) {
            const Real cross =
                exp((lam[static_cast<std::size_t>(j - 1)] -
                     lam[static_cast<std::size_t>(k - 1)]) *
                    tk);
            const Real sub = out.c_bar[static_cast<std::size_t>(j - 1)] * cross;
            ck -= sub;
            budget += out.arith_budget[static_cast<std::size_t>(j - 1)] *
                      cross.rounded_to(64);
            mag += abs(sub).rounded_to(64);
        }
        // per-op rounding: each exponential's argument weighs in with
        // |lambda(k) t|, plus 2k+8 elementary ops on magnitudes <= mag
        const double arg = std::abs(lambda_of_d(*view.spec, k)) * tk.to_double();
        budget += ldexp(Real(arg + 2.0 * static_cast<double>(k) + 8.0, 64) * mag,
                        1 - static_cast<long>(p));
        // rescaled: the recursion's exponents carry b within its certificate,
        // a relative |lambda(k)| cert_b on every factor above
        if (view.time_certs)
            budget += Real(std::abs(lambda_of_d(*view.spec, k)), 64) *
                      (*view.time_certs)[ti].rounded_to(64) * mag;
        out.c_bar.push_back(std::move(ck));
        out.arith_budget.push_back(std::move(budget));
    }
    return out;
}

InitialDatum reconstruct(const std::vector<Real>& c_bar,
                         const SamplingPlan& plan) {
    const long n = static_cast<long>(c_bar.size());
    const long m = (n + 1) / 2;
    mpfr_prec_t p = plan.x0.prec();
    for (const Real& c : c_bar) p = std::max(p, c.prec());
    InitialDatum f;
    for (long k = 1; k <= m; ++k) {
        const Real s = sin(Real(k, p) * plan.x0);
        if (s.is_zero()) throw ResonantPoint(k);
        f.coeffs.push_back(c_bar[static_cast<std::size_t>(k - 1)] / s);
    }
    return f;
}

std::vector<Real> apriori_error_bounds(const OperatorSpec& spec,
                                       const SamplingPlan& plan,
                                       double a0_tol, mpfr_prec_t prec) {
    const long n = plan.n;
    if (n < 1 || plan.times.size() != static_cast<std::size_t>(n))
        throw Error("plan has no times");
    std::vector<Real> bounds;
    if (!plan.rescaled) {
        const double gate = rho_threshold(spec);
        if (!(plan.rho > gate)) throw RhoBelowThreshold(plan.rho, gate);
        const A0Result a0 = a0_constant(spec, plan.times.front(), a0_tol, prec);
        const Real A = a0.value + a0.tail_bound;
        for (long k = 1; k <= n; ++k) {
            const Real& t = plan.times[static_cast<std::size_t>(n - k)];
            const Real d = spectral_gap(spec, k, prec).delta;
            bounds.push_back(ldexp(A * exp(-(d * t.rounded_to(prec))), k));
        }
        return bounds;
    }
    const double gate = 2.0 * M_LN2;
    if (!(plan.rho > gate)) throw RhoBelowThreshold(plan.rho, gate);
    if (plan.b_values.size() != static_cast<std::size_t>(n))
        throw Error("rescaled plan lacks b values");
    // certified lower ends of b keep the reported bound a true bound
    std::vector<Real> b_lower;
    for (std::size_t j = 0; j < plan.b_values.size(); ++j)
        b_lower.push_back((plan.b_values[j] - plan.b_certs[j]).rounded_to(prec));
    const A0Result a0 = a0_constant(heat_spec(), b_lower.front(), a0_tol, prec);
    const Real A = a0.value + a0.tail_bound;
    for (long k = 1; k <= n; ++k) {
        const Real& b = b_lower[static_cast<std::size_t>(n - k)];
        bounds.push_back(ldexp(A * exp(-(Real(2 * k + 1, prec) * b)), k));
    }
    return bounds;
}

OneSampleResult one_sample_two_coeffs(const Real& u1, const Real& t1,
                                      const Real& x0, double r,
                                      mpfr_prec_t prec) {
    if (!(t1.sign() > 0)) throw Error("t1 must be positive");
    const Real x0p = x0.rounded_to(prec);
    const Real res_floor = ldexp(Real(1L, prec), -static_cast<long>(prec / 2));
    if (abs(sin(x0p)) < res_floor) throw ResonantPoint(1);
    if (abs(sin(Real(2L, prec) * x0p)) < res_floor) throw ResonantPoint(2);
    const Real t = t1.rounded_to(prec);
    const Real u = u1.rounded_to(prec);
    OneSampleResult out;
    out.c1 = exp(t) * u;
    out.c2 = exp(Real(4L, prec) * t) * u - out.c1 * exp(Real(3L, prec) * t);
    const Real one(1L, prec);
    const Real denom = one - exp(-t);
    const Real pow_r = pow(Real(2L, prec), Real(-r, prec));
    out.bound1 = pow_r * exp(Real(-3L, prec) * t) / denom;
    out.bound2 = pow_r * (one + exp(Real(-5L, prec) * t)) / denom;
    return out;
}

OracleRecovery oracle_recover(const Trace& trace, const OperatorSpec& spec,
                              long n) {
    if (n < 1 || static_cast<std::size_t>(n) > trace.samples.size())
        throw Error("oracle size exceeds trace length");
    const RecursionView view = recursion_view(trace, spec);
    const std::vector<Real>& T = *view.times;
    const mpfr_prec_t q =
        static_cast<mpfr_prec_t>(2 * std::max<long>(trace.mantissa_bits, 128) + 64);
    const std::size_t nn = static_cast<std::size_t>(n);

    std::vector<std::vector<Real>> M(nn, std::vector<Real>(nn, Real(q)));
    for (std::size_t i = 0; i < nn; ++i)
        for (std::size_t j = 0; j < nn; ++j)
            M[i][j] = exp(lambda_of(*view.spec, static_cast<long>(j) + 1, q) *
                          T[i].rounded_to(q));

    // Gauss-Jordan with full pivoting on [A | R], R starts as I.  Column
    // swaps permute the unknowns; with cols[s] = original column at slot s,
    // the inverse's row cols[s] is R's row s at the end.
    std::vector<std::vector<Real>> A = M;
    std::vector<std::vector<Real>> R(nn, std::vector<Real>(nn, Real(q)));
    for (std::size_t i = 0; i < nn; ++i) R[i][i] = Real(1L, q);
    std::vector<std::size_t> cols(nn);
    for (std::size_t i = 0; i < nn; ++i) cols[i] = i;

    for (std::size_t s = 0; s < nn; ++s) {
        std::size_t pr = s, pc = s;
        Real best = abs(A[s][s]);
        for (std::size_t i = s; i < nn; ++i)
            for (std::size_t j = s; j < nn; ++j)
                if (abs(A[i][j]) > best) {
                    best = abs(A[i][j]);
                    pr = i;
                    pc = j;
                }
        if (best.is_zero())
            throw IllConditioned("sample matrix pivot vanished at the working precision");
        if (pr != s) {
            std::swap(A[pr], A[s]);
            std::swap(R[pr], R[s]);
        }
        if (pc != s) {
            for (std::size_t i = 0; i < nn; ++i) std::swap(A[i][pc], A[i][s]);
            std::swap(cols[pc], cols[s]);
        }
        const Real piv = A[s][s];
        for (std::size_t j = 0; j < nn; ++j) {
            A[s][j] /= piv;
            R[s][j] /= piv;
        }
        for (std::size_t i = 0; i < nn; ++i) {
            if (i == s) continue;
            const Real factor = A[i][s];
            if (factor.is_zero()) continue;
            for (std::size_t j = 0; j < nn; ++j) {
                A[i][j] -= factor * A[s][j];
                R[i][j] -= factor * R[s][j];
            }
        }
    }
    std::vector<std::vector<Real>> inv(nn, std::vector<Real>(nn, Real(q)));
    for (std::size_t s = 0; s < nn; ++s) inv[cols[s]] = std::move(R[s]);

    OracleRecovery out;
    out.mantissa_bits = static_cast<long>(q);
    Real inv_norm(64);
    for (std::size_t i = 0; i < nn; ++i) {
        Real row_sum(64);
        for (std::size_t j = 0; j < nn; ++j) row_sum += abs(inv[i][j]).rounded_to(64);
        inv_norm = max(inv_norm, row_sum);
    }
    out.inv_norm = inv_norm;
    for (std::size_t i = 0; i < nn; ++i) {
        Real ci(q);
        for (std::size_t j = 0; j < nn; ++j) ci += inv[i][j] * trace.samples[j];
        out.c.push_back(std::move(ci));
    }
    // certified via the residual: ||error||_inf <= ||M^-1||_inf (||Mc - u||
    // + sample certs + residual rounding); factor 2 covers the inverse's
    // own rounding at precision q
    Real res_norm(64);
    Real mag_norm(64);
    Real max_cert(64);
    for (std::size_t i = 0; i < nn; ++i) {
        Real ri(q);
        Real mag(64);
        for (std::size_t j = 0; j < nn; ++j) {
            const Real term = M[i][j] * out.c[j];
            ri += term;
            mag += abs(term).rounded_to(64);
        }
        ri -= trace.samples[i];
        res_norm = max(res_norm, abs(ri).rounded_to(64));
        mag_norm = max(mag_norm, mag);
        max_cert = max(max_cert, trace.sample_certs[i].rounded_to(64));
    }
    out.budget = Real(2L, 64) * inv_norm *
                 (res_norm + max_cert +
                  ldexp(Real(4L * n, 64) * mag_norm, 1 - static_cast<long>(q)));
    return out;
}

long plan_precision_bits(const OperatorSpec& spec, const SamplingPlan& plan,
                         double r, long K_modes, double theta, double lg_floor) {
    const long n = plan.n;
    const OperatorSpec& sp = plan.rescaled ? heat_spec() : spec;
    std::vector<double> T;
    if (plan.rescaled) {
        for (std::size_t j = 0; j < plan.b_values.size(); ++j)
            T.push_back((plan.b_values[j] - plan.b_certs[j]).to_double());
    } else {
        for (const Real& t : plan.times) T.push_back(t.to_double());
    }
    if (static_cast<long>(T.size()) != n) throw Error("plan times incomplete");

    double S = 0.0;
    for (long k = 1; k <= K_modes; ++k) S += std::pow(static_cast<double>(k), -r);
    const double N = sp.order_half;
    const double d0 = std::max(plan.d0, 1e-9);
    const double seed_arg =
        std::abs(lambda_of_d(sp, std::min<long>(2 * sp.order_half + 1, K_modes))) *
        T.back();
    const double C_F = std::max(
        S * (seed_arg + 2.0 * N * K_modes + 3.0 * K_modes / d0 + 4.0 * N * N +
             K_modes + 16.0),
        1.0);
    const double lgC = std::log2(C_F);

    // A0 at the first (effective) time, double precision is plenty here
    double a0 = 0.0;
    const double lam2 = lambda_of_d(sp, 2);
    for (long j = 2;; ++j) {
        const double term = std::exp((lambda_of_d(sp, j) - lam2) * T.front());
        a0 += term;
        if (term < 1e-30 * a0 || j > 100000) break;
    }

    const auto lse2 = [](std::initializer_list<double> xs) {
        double m = -std::numeric_limits<double>::infinity();
        for (double x : xs) m = std::max(m, x);
        double s = 0.0;
        for (double x : xs) s += std::exp2(x - m);
        return m + std::log2(s);
    };

    std::vector<double> lg_beta;
    double p_req = 0.0;
    for (long k = 1; k <= n; ++k) {
        const double tk = T[static_cast<std::size_t>(n - k)];
        const double a = std::abs(lambda_of_d(sp, k)) * tk / M_LN2;
        double cross_best = -std::numeric_limits<double>::infinity();
        for (long j = 1; j < k; ++j) {
            const double cross =
                (lambda_of_d(sp, j) - lambda_of_d(sp, k)) * tk / M_LN2;
            cross_best =
                std::max(cross_best, lg_beta[static_cast<std::size_t>(j - 1)] +
                                         cross + 1.0 + std::log2(double(k)));
        }
        const double lg_mag = a + std::log2(2.0 * (S + double(k) + 2.0));
        const double lg_round =
            std::log2(a * M_LN2 + 2.0 * double(k) + 8.0) + lg_mag;
        const double lgb = lse2({lgC + a, cross_best, lg_round});
        lg_beta.push_back(lgb);

        const double delta_k = lambda_of_d(sp, k) - lambda_of_d(sp, k + 1);
        const double lg_bound =
            std::log2(a0) + double(k) - delta_k * tk / M_LN2;
        p_req = std::max(p_req, lgb - std::max(lg_bound, lg_floor) - std::log2(theta));
    }

    const long gate = [&] {
        std::vector<Real> tr;
        for (double t : T) tr.push_back(Real(t, 64));
        return recovery_gate_bits(sp, tr);
    }();
    return std::max({static_cast<long>(std::ceil(p_req)) + 16, gate, 192L});
}

}  // namespace dynsamp
