#pragma once

#include <stdexcept>
#include <string>

// Error taxonomy for the recovery pipeline.  Every failure a caller can act
// on gets its own type carrying the datum that triggered it; anything else
// surfaces as the base Error.

namespace dynsamp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dyadic coefficient alpha_{2l} has the wrong sign (or is zero) at index l.
class SignPatternViolation : public Error {
public:
    SignPatternViolation(int l, double value)
        : Error("coefficient alpha_" + std::to_string(2 * l) + " = " +
                std::to_string(value) + " violates the alternating sign pattern"),
          index(l), value(value) {}
    int index;
    double value;
};

class EmptyCoefficients : public Error {
public:
    EmptyCoefficients() : Error("operator has no dyadic coefficients") {}
};

// sin(k x0) vanished (or fell below the resonance floor) at mode k.
class ResonantPoint : public Error {
public:
    explicit ResonantPoint(long k)
        : Error("sampling point is resonant at mode " + std::to_string(k)),
          mode(k) {}
    long mode;
};

class RhoBelowThreshold : public Error {
public:
    RhoBelowThreshold(double rho, double threshold)
        : Error("time ratio rho = " + std::to_string(rho) +
                " is not above the admissibility threshold " +
                std::to_string(threshold)),
          rho(rho), threshold(threshold) {}
    double rho;
    double threshold;
};

// Root bracketing for the rescaled-time equation b(t) = target failed.
class RootBracketFailure : public Error {
public:
    using Error::Error;
};

// The requested tolerance needs more mantissa bits than the configured ceiling.
class TolUnachievable : public Error {
public:
    TolUnachievable(long needed, long ceiling)
        : Error("tolerance requires " + std::to_string(needed) +
                " mantissa bits but the ceiling is " + std::to_string(ceiling)),
          needed_bits(needed), ceiling_bits(ceiling) {}
    long needed_bits;
    long ceiling_bits;
};

// Trace precision is below what the recovery recursion's amplification needs.
class PrecisionInsufficient : public Error {
public:
    PrecisionInsufficient(long have, long need)
        : Error("trace carries " + std::to_string(have) +
                " mantissa bits, recovery needs at least " + std::to_string(need)),
          have_bits(have), need_bits(need) {}
    long have_bits;
    long need_bits;
};

// The oracle's sample matrix lost all significant digits during elimination.
class IllConditioned : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(int line, const std::string& what)
        : Error("config line " + std::to_string(line) + ": " + what),
          line(line) {}
    explicit ConfigError(const std::string& what) : Error(what), line(0) {}
    int line;
};

}  // namespace dynsamp
