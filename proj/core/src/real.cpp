#include "dynsamp/real.hpp"

#include <cmath>
#include <cstdlib>

#include "dynsamp/errors.hpp"

namespace dynsamp {

Real::Real(const std::string& decimal, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    if (decimal.empty() ||
        mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw Error("malformed decimal literal: '" + decimal + "'");
    }
}

std::string Real::str() const {
    if (mpfr_zero_p(v_)) return "0";
    if (!mpfr_number_p(v_)) return mpfr_nan_p(v_) ? "nan" : (mpfr_sgn(v_) > 0 ? "inf" : "-inf");
    // ceil(p log10 2) + 2 significant digits round-trip the mantissa.
    const long digits = static_cast<long>(std::ceil(static_cast<double>(prec()) * 0.30102999566398120)) + 2;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", static_cast<int>(digits - 1), v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

}  // namespace dynsamp
