#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

// Arbitrary-precision real scalar.  Thin RAII wrapper over one mpfr_t:
// every operation rounds to nearest, and a binary operation allocates its
// result at the wider of the two operand precisions, so precision climbs
// through a computation instead of silently truncating.  The decimal
// serialization carries ceil(p log10 2) + 2 significant digits, enough to
// reproduce the mantissa bit for bit on read-back at the same precision.

namespace dynsamp {

class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(double x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    Real(long x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    Real(int x, mpfr_prec_t prec) : Real(static_cast<long>(x), prec) {}
    // Parses a decimal string; throws Error on malformed input.
    Real(const std::string& decimal, mpfr_prec_t prec);

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    std::string str() const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_negative() const { return mpfr_signbit(v_) != 0 && !is_zero(); }
    int sign() const { return mpfr_sgn(v_); }

    // Returns a copy rounded to exactly `prec` bits.
    Real rounded_to(mpfr_prec_t prec) const {
        Real r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static Real ln2(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_log2(r.v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { return apply2(mpfr_add, o); }
    Real& operator-=(const Real& o) { return apply2(mpfr_sub, o); }
    Real& operator*=(const Real& o) { return apply2(mpfr_mul, o); }
    Real& operator/=(const Real& o) { return apply2(mpfr_div, o); }

    friend Real operator+(const Real& a, const Real& b) { return binary(mpfr_add, a, b); }
    friend Real operator-(const Real& a, const Real& b) { return binary(mpfr_sub, a, b); }
    friend Real operator*(const Real& a, const Real& b) { return binary(mpfr_mul, a, b); }
    friend Real operator/(const Real& a, const Real& b) { return binary(mpfr_div, a, b); }

    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend Real operator*(const Real& a, long b) {
        Real r(a.prec());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator/(const Real& a, long b) {
        Real r(a.prec());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator+(const Real& a, long b) {
        Real r(a.prec());
        mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, long b) { return a + (-b); }
    friend Real operator-(long a, const Real& b) {
        Real r(b.prec());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

    friend Real exp(const Real& a) { return unary(mpfr_exp, a); }
    friend Real expm1(const Real& a) { return unary(mpfr_expm1, a); }
    friend Real log(const Real& a) { return unary(mpfr_log, a); }
    friend Real sin(const Real& a) { return unary(mpfr_sin, a); }
    friend Real cos(const Real& a) { return unary(mpfr_cos, a); }
    friend Real sqrt(const Real& a) { return unary(mpfr_sqrt, a); }
    friend Real abs(const Real& a) {
        Real r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, unsigned long e) {
        Real r(a.prec());
        mpfr_pow_ui(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, const Real& b) { return binary(mpfr_pow, a, b); }
    // x * 2^e, exact.
    friend Real ldexp(const Real& a, long e) {
        Real r(a.prec());
        mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend Real max(const Real& a, const Real& b) { return binary(mpfr_max, a, b); }
    friend Real min(const Real& a, const Real& b) { return binary(mpfr_min, a, b); }

private:
    using mpfr_binary_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using mpfr_unary_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

    static Real binary(mpfr_binary_fn fn, const Real& a, const Real& b) {
        Real r(a.prec() > b.prec() ? a.prec() : b.prec());
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static Real unary(mpfr_unary_fn fn, const Real& a) {
        Real r(a.prec());
        fn(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    Real& apply2(mpfr_binary_fn fn, const Real& o) {
        if (o.prec() > prec()) {
            Real widened = binary(fn, *this, o);
            mpfr_swap(v_, widened.v_);
        } else {
            fn(v_, v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    mpfr_t v_;
};

}  // namespace dynsamp
