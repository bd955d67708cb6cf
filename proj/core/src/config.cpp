#include "dynsamp/config.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "dynsamp/errors.hpp"

namespace dynsamp {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool valid_key(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            return false;
    return true;
}

// Strips a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

bool lex_number(const std::string& tok, TomlValue& out) {
    if (tok.empty()) return false;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || errno == ERANGE) return false;
    out.kind = TomlValue::Kind::Number;
    out.number = v;
    out.integral = tok.find_first_of(".eE") == std::string::npos;
    if (out.integral) {
        errno = 0;
        const long lv = std::strtol(tok.c_str(), &end, 10);
        if (end != tok.c_str() + tok.size() || errno == ERANGE) out.integral = false;
        out.integer = lv;
    }
    return true;
}

TomlValue parse_value(const std::string& raw, int line) {
    const std::string v = trim(raw);
    if (v.empty()) throw ConfigError(line, "missing value");
    TomlValue out;
    out.line = line;
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw ConfigError(line, "unterminated string");
        out.kind = TomlValue::Kind::String;
        out.str = v.substr(1, v.size() - 2);
        if (out.str.find('"') != std::string::npos)
            throw ConfigError(line, "embedded quote in string");
        return out;
    }
    if (v == "true" || v == "false") {
        out.kind = TomlValue::Kind::Bool;
        out.boolean = (v == "true");
        return out;
    }
    if (v.front() == '[') {
        if (v.back() != ']') throw ConfigError(line, "array must close on the same line");
        out.kind = TomlValue::Kind::Array;
        out.array_integral = true;
        const std::string body = trim(v.substr(1, v.size() - 2));
        if (body.empty()) return out;
        std::size_t pos = 0;
        while (pos <= body.size()) {
            const std::size_t comma = body.find(',', pos);
            const std::string tok =
                trim(comma == std::string::npos ? body.substr(pos)
                                                : body.substr(pos, comma - pos));
            TomlValue elem;
            if (!lex_number(tok, elem))
                throw ConfigError(line, "array element is not a number: '" + tok + "'");
            out.array.push_back(elem.number);
            out.array_integral = out.array_integral && elem.integral;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return out;
    }
    if (!lex_number(v, out))
        throw ConfigError(line, "cannot parse value: '" + v + "'");
    return out;
}

}  // namespace

void TomlTable::insert(const std::string& key, TomlValue value, int line) {
    if (values_.count(key)) throw ConfigError(line, "duplicate key: " + key);
    value.line = line;
    values_.emplace(key, std::move(value));
}

const TomlValue& TomlTable::fetch(const std::string& key, TomlValue::Kind kind) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing required key: " + key);
    consumed_.insert(key);
    const TomlValue& v = it->second;
    const auto expect = [&](const char* what) {
        throw ConfigError(v.line, "key '" + key + "' must be " + what);
    };
    switch (kind) {
        case TomlValue::Kind::String:
            if (v.kind != TomlValue::Kind::String) expect("a string");
            break;
        case TomlValue::Kind::Number:
            if (v.kind != TomlValue::Kind::Number) expect("a number");
            break;
        case TomlValue::Kind::Bool:
            if (v.kind != TomlValue::Kind::Bool) expect("a boolean");
            break;
        case TomlValue::Kind::Array:
            if (v.kind != TomlValue::Kind::Array) expect("an array");
            break;
    }
    return v;
}

std::string TomlTable::get_string(const std::string& key) const {
    return fetch(key, TomlValue::Kind::String).str;
}
double TomlTable::get_double(const std::string& key) const {
    return fetch(key, TomlValue::Kind::Number).number;
}
long TomlTable::get_long(const std::string& key) const {
    const TomlValue& v = fetch(key, TomlValue::Kind::Number);
    if (!v.integral) throw ConfigError(v.line, "key '" + key + "' must be an integer");
    return v.integer;
}
bool TomlTable::get_bool(const std::string& key) const {
    return fetch(key, TomlValue::Kind::Bool).boolean;
}
std::vector<double> TomlTable::get_double_array(const std::string& key) const {
    return fetch(key, TomlValue::Kind::Array).array;
}
std::vector<long> TomlTable::get_long_array(const std::string& key) const {
    const TomlValue& v = fetch(key, TomlValue::Kind::Array);
    if (!v.array_integral)
        throw ConfigError(v.line, "key '" + key + "' must be an integer array");
    std::vector<long> out;
    for (double d : v.array) out.push_back(static_cast<long>(d));
    return out;
}

std::optional<std::string> TomlTable::opt_string(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return get_string(key);
}
std::optional<double> TomlTable::opt_double(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return get_double(key);
}
std::optional<long> TomlTable::opt_long(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return get_long(key);
}
std::optional<std::vector<double>> TomlTable::opt_double_array(
    const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return get_double_array(key);
}
std::optional<std::vector<long>> TomlTable::opt_long_array(
    const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return get_long_array(key);
}

bool TomlTable::is_string(const std::string& key) const {
    const auto it = values_.find(key);
    return it != values_.end() && it->second.kind == TomlValue::Kind::String;
}

int TomlTable::line_of(const std::string& key) const {
    const auto it = values_.find(key);
    return it == values_.end() ? 0 : it->second.line;
}

void TomlTable::require_all_consumed() const {
    for (const auto& [key, value] : values_)
        if (!consumed_.count(key))
            throw ConfigError(value.line, "unknown key: " + key);
}

TomlTable parse_toml(const std::string& text) {
    TomlTable table;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!valid_key(section)) throw ConfigError(line_no, "malformed section name");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (!valid_key(key)) throw ConfigError(line_no, "malformed key: '" + key + "'");
        const std::string full = section.empty() ? key : section + "." + key;
        table.insert(full, parse_value(line.substr(eq + 1), line_no), line_no);
    }
    return table;
}

// ---------------------------------------------------------------------------
// x0 expressions: expr := term (('+'|'-') term)*, term := factor
// (('*'|'/') factor)*, factor := '-'* primary, primary := number | pi |
// sqrt(expr) | (expr).

namespace {

struct ExprParser {
    const std::string& s;
    std::size_t pos = 0;
    mpfr_prec_t prec;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("x0 expression: " + what + " at position " +
                          std::to_string(pos) + " in '" + s + "'");
    }

    Real parse_expr() {
        Real v = parse_term();
        for (;;) {
            if (eat('+'))
                v += parse_term();
            else if (eat('-'))
                v -= parse_term();
            else
                return v;
        }
    }
    Real parse_term() {
        Real v = parse_factor();
        for (;;) {
            if (eat('*'))
                v *= parse_factor();
            else if (eat('/')) {
                const Real d = parse_factor();
                if (d.is_zero()) fail("division by zero");
                v /= d;
            } else
                return v;
        }
    }
    Real parse_factor() {
        if (eat('-')) return -parse_factor();
        return parse_primary();
    }
    Real parse_primary() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end");
        if (eat('(')) {
            Real v = parse_expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(s[pos]))) {
            std::size_t start = pos;
            while (pos < s.size() &&
                   std::isalnum(static_cast<unsigned char>(s[pos])))
                ++pos;
            const std::string name = s.substr(start, pos - start);
            if (name == "pi") return Real::pi(prec);
            if (name == "sqrt") {
                if (!eat('(')) fail("sqrt needs '('");
                Real v = parse_expr();
                if (!eat(')')) fail("missing ')'");
                if (v.is_negative()) fail("sqrt of a negative value");
                return sqrt(v);
            }
            fail("unknown name '" + name + "'");
        }
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
            ++pos;
        if (pos == start) fail("expected a number");
        const std::string lit = s.substr(start, pos - start);
        try {
            return Real(lit, prec);
        } catch (const Error&) {
            fail("malformed number '" + lit + "'");
        }
    }
};

}  // namespace

Real parse_x0_expression(const std::string& expr, mpfr_prec_t prec) {
    ExprParser p{expr, 0, prec};
    Real v = p.parse_expr();
    p.skip_ws();
    if (p.pos != expr.size()) p.fail("trailing input");
    return v;
}

}  // namespace dynsamp
