#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dynsamp/real.hpp"

// Experiment configs are TOML, parsed strictly: sections, scalar
// key = value pairs (strings, numbers, booleans), and single-line arrays
// of numbers.  Every key a pipeline does not consume is an error, because
// a silently ignored typo in rho or t1 would bypass the admissibility
// gate while looking configured.  Errors carry the line number.
//
// Sampling points are written as tiny arithmetic expressions over decimal
// literals, pi, sqrt(), parentheses and + - * /, evaluated in MPFR, e.g.
// x0 = "pi*(sqrt(5)-1)/2".

namespace dynsamp {

struct TomlValue {
    enum class Kind { String, Number, Bool, Array };
    Kind kind = Kind::Number;
    std::string str;
    double number = 0.0;
    bool boolean = false;
    bool integral = false;  // Number lexed without '.', 'e' and fits a long
    long integer = 0;
    std::vector<double> array;
    bool array_integral = false;  // every element lexed as an integer
    int line = 0;
};

// Flat view of the parsed file: keys are "section.key" (or bare "key"
// before any section header).  Getters mark keys consumed; call
// require_all_consumed() after reading a config to reject strays.
class TomlTable {
public:
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;  // accepts integers too
    long get_long(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::vector<double> get_double_array(const std::string& key) const;
    std::vector<long> get_long_array(const std::string& key) const;

    std::optional<std::string> opt_string(const std::string& key) const;
    std::optional<double> opt_double(const std::string& key) const;
    std::optional<long> opt_long(const std::string& key) const;
    std::optional<std::vector<double>> opt_double_array(const std::string& key) const;
    std::optional<std::vector<long>> opt_long_array(const std::string& key) const;

    // True when the value is a quoted string (e.g. rho = "auto" vs rho = 1.5).
    bool is_string(const std::string& key) const;

    int line_of(const std::string& key) const;
    void require_all_consumed() const;

    void insert(const std::string& key, TomlValue value, int line);

private:
    const TomlValue& fetch(const std::string& key, TomlValue::Kind kind) const;

    std::map<std::string, TomlValue> values_;
    mutable std::set<std::string> consumed_;
};

TomlTable parse_toml(const std::string& text);

// The x0 expression evaluator.  Throws ConfigError on malformed input.
Real parse_x0_expression(const std::string& expr, mpfr_prec_t prec);

}  // namespace dynsamp
