#include "dynsamp/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dynsamp/errors.hpp"

namespace dynsamp {

namespace {

using nlohmann::json;

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void append_real_array(std::string& out, const std::vector<Real>& xs) {
    out += '[';
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += '"';
        out += xs[i].str();
        out += '"';
    }
    out += ']';
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error("malformed JSON input");
    return j;
}

Real real_field(const json& j, const char* key, mpfr_prec_t prec) {
    if (!j.contains(key) || !j[key].is_string())
        throw Error(std::string("JSON field '") + key + "' missing or not a string");
    return Real(j[key].template get<std::string>(), prec);
}

std::vector<Real> real_array(const json& j, const char* key, mpfr_prec_t prec,
                             bool required) {
    std::vector<Real> out;
    if (!j.contains(key)) {
        if (required) throw Error(std::string("JSON field '") + key + "' missing");
        return out;
    }
    if (!j[key].is_array())
        throw Error(std::string("JSON field '") + key + "' is not an array");
    for (const auto& e : j[key]) {
        if (!e.is_string())
            throw Error(std::string("JSON array '") + key + "' holds a non-string");
        out.emplace_back(e.template get<std::string>(), prec);
    }
    return out;
}

}  // namespace

std::string datum_to_json(const InitialDatum& f) {
    std::string out = "{\n  \"r\": " + fmt_double(f.smoothness_r) + ",\n  \"coeffs\": [";
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + f.coeffs[i].str() + "\"";
    }
    out += "]\n}\n";
    return out;
}

InitialDatum datum_from_json(const std::string& text, mpfr_prec_t prec) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("r") || !j.contains("coeffs") ||
        !j["r"].is_number() || !j["coeffs"].is_array())
        throw Error("datum JSON needs fields 'r' (number) and 'coeffs' (array)");
    InitialDatum f;
    f.smoothness_r = j["r"].template get<double>();
    for (const auto& e : j["coeffs"]) {
        if (e.is_string())
            f.coeffs.emplace_back(e.template get<std::string>(), prec);
        else if (e.is_number())
            f.coeffs.emplace_back(e.template get<double>(), prec);
        else
            throw Error("datum 'coeffs' holds a non-number");
    }
    return f;
}

std::string trace_to_json(const Trace& trace) {
    std::string out = "{\n";
    out += "  \"x0\": \"" + trace.x0.str() + "\",\n";
    out += "  \"times\": ";
    append_real_array(out, trace.times);
    out += ",\n  \"samples\": ";
    append_real_array(out, trace.samples);
    out += ",\n  \"sample_certs\": ";
    append_real_array(out, trace.sample_certs);
    out += ",\n  \"mantissa_bits\": " + std::to_string(trace.mantissa_bits);
    out += ",\n  \"rescaled\": " + std::string(trace.rescaled ? "true" : "false");
    if (trace.rescaled) {
        out += ",\n  \"effective_times\": ";
        append_real_array(out, trace.effective_times);
        out += ",\n  \"effective_certs\": ";
        append_real_array(out, trace.effective_certs);
    }
    out += ",\n  \"noise_magnitude\": " + fmt_double(trace.noise_magnitude);
    out += ",\n  \"noise_seed\": " + std::to_string(trace.noise_seed);
    out += "\n}\n";
    return out;
}

Trace trace_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("mantissa_bits") ||
        !j["mantissa_bits"].is_number_integer())
        throw Error("trace JSON needs integer field 'mantissa_bits'");
    Trace tr;
    tr.mantissa_bits = j["mantissa_bits"].template get<long>();
    if (tr.mantissa_bits < 2) throw Error("trace mantissa_bits must be >= 2");
    const mpfr_prec_t p = static_cast<mpfr_prec_t>(tr.mantissa_bits);
    tr.x0 = real_field(j, "x0", std::max<mpfr_prec_t>(p, 192));
    tr.times = real_array(j, "times", p, true);
    tr.samples = real_array(j, "samples", p, true);
    tr.sample_certs = real_array(j, "sample_certs", 64, false);
    if (tr.sample_certs.empty())
        tr.sample_certs.assign(tr.samples.size(), Real(64));
    if (j.contains("rescaled")) tr.rescaled = j["rescaled"].template get<bool>();
    if (tr.rescaled) {
        tr.effective_times = real_array(j, "effective_times", p, true);
        tr.effective_certs = real_array(j, "effective_certs", 64, false);
        if (tr.effective_certs.empty())
            tr.effective_certs.assign(tr.effective_times.size(), Real(64));
    }
    if (j.contains("noise_magnitude"))
        tr.noise_magnitude = j["noise_magnitude"].template get<double>();
    if (j.contains("noise_seed"))
        tr.noise_seed = j["noise_seed"].template get<std::uint64_t>();
    if (tr.times.size() != tr.samples.size() ||
        tr.sample_certs.size() != tr.samples.size())
        throw Error("trace arrays disagree on the sample count");
    return tr;
}

std::string recovery_result_to_json(const RecoveryResult& r) {
    std::string out = "{\n";
    out += "  \"n\": " + std::to_string(r.n);
    out += ",\n  \"m\": " + std::to_string(r.m);
    out += ",\n  \"mantissa_bits\": " + std::to_string(r.mantissa_bits);
    out += ",\n  \"c_bar\": ";
    append_real_array(out, r.c_bar);
    out += ",\n  \"f_bar\": ";
    append_real_array(out, r.f_bar);
    out += ",\n  \"apriori_bounds\": ";
    append_real_array(out, r.apriori_bounds);
    out += ",\n  \"arith_budget\": ";
    append_real_array(out, r.arith_budget);
    out += ",\n  \"truth_known\": " + std::string(r.truth_known ? "true" : "false");
    if (r.truth_known) {
        out += ",\n  \"l2_error\": \"" + r.l2_error.str() + "\"";
        out += ",\n  \"max_bound_violation\": \"" + r.max_bound_violation.str() + "\"";
    }
    out += "\n}\n";
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
    if (!out.good()) throw Error("write failed: " + path);
}

}  // namespace dynsamp
