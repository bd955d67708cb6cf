#include "dynsamp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include "dynsamp/errors.hpp"
#include "dynsamp/forward_solver.hpp"

namespace dynsamp {

namespace {

const OperatorSpec& heat_spec() {
    static const OperatorSpec heat{1, {1.0}};
    return heat;
}

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& toml_text) {
    TomlTable t = parse_toml(toml_text);
    ExperimentConfig cfg;

    const bool has_op = t.has("operator.alpha");
    const bool has_prof = t.has("profile.kind");
    if (has_op == has_prof)
        throw ConfigError("config needs exactly one of operator.alpha or profile.kind");
    if (has_op) {
        cfg.op = validate_coefficients(t.get_double_array("operator.alpha"));
    } else {
        const std::string kind = t.get_string("profile.kind");
        if (kind == "constant")
            cfg.profile = constant_profile(t.get_double("profile.c"));
        else if (kind == "affine")
            cfg.profile = affine_profile(t.get_double("profile.a"),
                                         t.get_double("profile.b"));
        else if (kind == "sinusoidal")
            cfg.profile = sinusoidal_profile(t.get_double("profile.a"),
                                             t.get_double("profile.b"),
                                             t.get_double("profile.omega"));
        else if (kind == "tabulated")
            cfg.profile = tabulated_profile(t.get_double_array("profile.t"),
                                            t.get_double_array("profile.alpha"));
        else
            throw ConfigError(t.line_of("profile.kind"),
                              "unknown profile kind: " + kind);
    }

    if (t.has("datum.file")) {
        cfg.datum.file = t.get_string("datum.file");
    } else {
        cfg.datum.r = t.get_double("datum.r");
        cfg.datum.K = t.get_long("datum.K");
        if (cfg.datum.K < 0)
            throw ConfigError(t.line_of("datum.K"), "datum.K must be >= 0");
        if (const auto m = t.opt_double("datum.margin")) {
            cfg.datum.margin = *m;
            if (!(cfg.datum.margin >= 0.0))
                throw ConfigError(t.line_of("datum.margin"), "margin must be >= 0");
        }
        if (const auto s = t.opt_long("datum.seed"))
            cfg.datum.seed = static_cast<std::uint64_t>(*s);
    }

    if (t.has("plan.x0")) {
        if (t.is_string("plan.x0"))
            cfg.x0_expr = t.get_string("plan.x0");
        else
            cfg.x0_expr = fmt17(t.get_double("plan.x0"));
    }
    cfg.t1 = t.get_double("plan.t1");
    if (!(cfg.t1 > 0.0)) throw ConfigError(t.line_of("plan.t1"), "t1 must be > 0");
    if (t.is_string("plan.rho")) {
        cfg.rho_mode = t.get_string("plan.rho");
        if (cfg.rho_mode != "auto" && cfg.rho_mode != "auto-certified")
            throw ConfigError(t.line_of("plan.rho"),
                              "rho must be a number, \"auto\", or \"auto-certified\"");
    } else {
        cfg.rho = t.get_double("plan.rho");
    }
    if (const auto n = t.opt_long("plan.n")) {
        cfg.n = *n;
        if (cfg.n < 1) throw ConfigError(t.line_of("plan.n"), "n must be >= 1");
    }
    if (const auto ns = t.opt_long_array("plan.n_sweep")) {
        cfg.n_sweep = *ns;
        for (std::size_t i = 0; i < cfg.n_sweep.size(); ++i)
            if (cfg.n_sweep[i] < 1 ||
                (i > 0 && cfg.n_sweep[i] <= cfg.n_sweep[i - 1]))
                throw ConfigError(t.line_of("plan.n_sweep"),
                                  "n_sweep must be strictly increasing and >= 1");
    }
    if (cfg.n == 0 && cfg.n_sweep.empty())
        throw ConfigError("config needs plan.n or plan.n_sweep");
    if (const auto ks = t.opt_long("plan.K_scan")) {
        cfg.K_scan = *ks;
        if (cfg.K_scan < 1)
            throw ConfigError(t.line_of("plan.K_scan"), "K_scan must be >= 1");
    }

    if (const auto v = t.opt_double("tolerances.sample")) {
        cfg.sample_tol = *v;
        if (!(cfg.sample_tol > 0.0))
            throw ConfigError(t.line_of("tolerances.sample"), "sample tol must be > 0");
    }
    if (const auto v = t.opt_double("tolerances.a0")) {
        cfg.a0_tol = *v;
        if (!(cfg.a0_tol > 0.0))
            throw ConfigError(t.line_of("tolerances.a0"), "a0 tol must be > 0");
    }
    if (const auto v = t.opt_long("precision.bits")) {
        cfg.precision_bits = *v;
        if (cfg.precision_bits < 0)
            throw ConfigError(t.line_of("precision.bits"), "precision.bits must be >= 0");
    }
    if (const auto v = t.opt_string("output.dir")) cfg.out_dir = *v;

    t.require_all_consumed();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    return parse_experiment_config(read_text_file(path));
}

double resolve_rho(const ExperimentConfig& cfg, const OperatorSpec& base) {
    if (cfg.rho_mode == "auto") return 1.05 * rho_threshold(base);
    if (cfg.rho_mode == "auto-certified") return 1.05 * certified_rho_threshold(base);
    return cfg.rho;
}

namespace {

struct Pieces {
    OperatorSpec spec;  // recursion-side operator (heat when a profile runs)
    Real x0{192};
    InitialDatum f;
    double rho = 0.0;
    long K_scan = 0;
};

Pieces resolve_pieces(const ExperimentConfig& cfg) {
    Pieces p;
    p.spec = cfg.op ? *cfg.op : heat_spec();
    p.x0 = parse_x0_expression(cfg.x0_expr, 192);
    if (!cfg.datum.file.empty())
        p.f = datum_from_json(read_text_file(cfg.datum.file));
    else
        p.f = random_ball_member(cfg.datum.r, cfg.datum.K, cfg.datum.margin,
                                 cfg.datum.seed);
    p.rho = resolve_rho(cfg, p.spec);
    p.K_scan = cfg.K_scan > 0
                   ? cfg.K_scan
                   : std::max<long>(1000, static_cast<long>(p.f.coeffs.size()));
    return p;
}

RecoverOutcome run_one(const ExperimentConfig& cfg, const Pieces& p, long n,
                       double lg_floor =
                           -std::numeric_limits<double>::infinity()) {
    const double t_start = now_ms();
    RecoverOutcome out;
    if (cfg.profile)
        out.plan = make_rescaled_plan(*cfg.profile, p.x0, p.K_scan,
                                      Real(cfg.t1, 64), p.rho, n);
    else
        out.plan = make_autonomous_plan(p.spec, p.x0, p.K_scan, Real(cfg.t1, 64),
                                        p.rho, n);

    const long min_bits =
        cfg.precision_bits > 0
            ? cfg.precision_bits
            : plan_precision_bits(p.spec, out.plan, p.f.smoothness_r,
                                  static_cast<long>(p.f.coeffs.size()), 1e-3,
                                  lg_floor);
    out.trace = cfg.profile
                    ? sample_trace(*cfg.profile, p.f, out.plan, cfg.sample_tol,
                                   min_bits)
                    : sample_trace(p.spec, p.f, out.plan, cfg.sample_tol,
                                   min_bits);

    const CoefficientRecovery rec = recover_coefficients(out.trace, p.spec);
    RecoveryResult& R = out.result;
    R.n = n;
    R.m = (n + 1) / 2;
    R.c_bar = rec.c_bar;
    R.arith_budget = rec.arith_budget;
    R.mantissa_bits = rec.mantissa_bits;
    R.f_bar = reconstruct(rec.c_bar, out.plan).coeffs;
    R.apriori_bounds = apriori_error_bounds(p.spec, out.plan, cfg.a0_tol);

    R.truth_known = true;
    // truth comparison at trace precision: bounds can sit thousands of
    // digits below 1, so the reference c_k must round far beneath them,
    // which the precision policy already guarantees at this p
    const mpfr_prec_t q =
        std::max<mpfr_prec_t>(384, static_cast<mpfr_prec_t>(R.mantissa_bits));
    const Real x0q = p.x0.rounded_to(q);
    out.sound = true;
    Real max_viol(64);
    for (long k = 1; k <= n; ++k) {
        Real c_true(q);
        if (static_cast<std::size_t>(k) <= p.f.coeffs.size())
            c_true = p.f.coeffs[static_cast<std::size_t>(k - 1)] *
                     sin(Real(k, q) * x0q);
        const std::size_t i = static_cast<std::size_t>(k - 1);
        const Real viol =
            (abs(c_true - R.c_bar[i]) - R.apriori_bounds[i]).rounded_to(64);
        if (k == 1 || viol > max_viol) max_viol = viol;
        // the ledger plus the truth's own rounding slack is the fair margin
        const Real slack =
            R.arith_budget[i] +
            ldexp(Real(1L, 64) + abs(c_true).rounded_to(64),
                  12 - static_cast<long>(q));
        if (viol > slack) out.sound = false;
    }
    R.max_bound_violation = max_viol;

    InitialDatum fn;
    fn.coeffs = R.f_bar;
    fn.smoothness_r = p.f.smoothness_r;
    R.l2_error = l2_distance(p.f, fn, q).rounded_to(192);
    out.datum = p.f;
    out.wall_ms = now_ms() - t_start;
    return out;
}

// certified arithmetic share of the L2 error: the ledger mapped through
// the same sin(k x0) division the reconstruction applies
Real tau_budget_of(const RecoverOutcome& oc) {
    const long m = oc.result.m;
    const mpfr_prec_t q = 192;
    const Real x0q = oc.plan.x0.rounded_to(q);
    Real sum(64);
    for (long k = 1; k <= m; ++k) {
        const Real s = abs(sin(Real(k, q) * x0q)).rounded_to(64);
        if (s.is_zero()) throw ResonantPoint(k);
        const Real contrib = oc.result.arith_budget[static_cast<std::size_t>(k - 1)] / s;
        sum += contrib * contrib;
    }
    return sqrt(Real::pi(64) / Real(2L, 64) * sum);
}

}  // namespace

RecoverOutcome recover_experiment(const ExperimentConfig& cfg) {
    if (cfg.n < 1) throw Error("recover pipeline needs plan.n");
    const Pieces p = resolve_pieces(cfg);
    return run_one(cfg, p, cfg.n);
}

SweepOutcome sweep_experiment(const ExperimentConfig& cfg) {
    if (cfg.n_sweep.size() < 3) throw Error("sweep needs an n list of length >= 3");
    const Pieces p = resolve_pieces(cfg);
    SweepOutcome out;
    out.all_sound = true;
    for (const long n : cfg.n_sweep) {
        // rate rows only need arithmetic below the truncation scale, not
        // below bounds that shrink doubly exponentially in n; the budget
        // column stays certified either way
        const RecoverOutcome oc = run_one(cfg, p, n, -256.0);
        SweepRow row;
        row.n = n;
        row.m = oc.result.m;
        row.l2_error = oc.result.l2_error.rounded_to(64);
        row.max_bound_violation = oc.result.max_bound_violation;
        row.tau_budget = tau_budget_of(oc);
        row.mantissa_bits = oc.result.mantissa_bits;
        row.sound = oc.sound;
        row.excluded = !(row.l2_error > Real(10L, 64) * row.tau_budget);
        row.wall_ms = oc.wall_ms;
        out.all_sound = out.all_sound && row.sound;
        out.rows.push_back(std::move(row));
    }

    std::vector<double> xs, ys;
    for (const SweepRow& row : out.rows) {
        if (row.excluded) continue;
        const double l2 = row.l2_error.to_double();
        if (!(l2 > 0.0) || !std::isfinite(l2)) continue;
        xs.push_back(std::log(static_cast<double>(row.n)));
        ys.push_back(std::log(l2));
    }
    if (xs.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(xs.size());
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        out.slope = sxy / sxx;
        const double b0 = my - out.slope * mx;
        double rss = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double e = ys[i] - (b0 + out.slope * xs[i]);
            rss += e * e;
        }
        out.residual = std::sqrt(rss / static_cast<double>(xs.size()));
        out.fit_status = xs.size() == out.rows.size() ? "ok" : "partial";
    } else {
        out.fit_status = "floor";
    }
    return out;
}

RunReport run_recover(const ExperimentConfig& cfg) {
    const RecoverOutcome oc = recover_experiment(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    RunReport rep;
    const auto emit = [&](const std::string& name, const std::string& text) {
        const std::string path =
            (std::filesystem::path(cfg.out_dir) / name).string();
        write_text_file(path, text);
        rep.files.push_back(path);
    };
    emit("datum.json", datum_to_json(oc.datum));
    emit("trace.json", trace_to_json(oc.trace));
    emit("recovery.json", recovery_result_to_json(oc.result));

    rep.exit_code = oc.sound ? 0 : 1;
    rep.summary =
        "recover: n=" + std::to_string(oc.result.n) +
        " m=" + std::to_string(oc.result.m) +
        " mantissa_bits=" + std::to_string(oc.result.mantissa_bits) +
        "\nl2_error = " + fmt6(oc.result.l2_error.to_double()) +
        "\nmax_bound_violation = " + fmt6(oc.result.max_bound_violation.to_double()) +
        "\nsoundness: " + (oc.sound ? "pass" : "FAIL") +
        "\nwall: " + fmt6(oc.wall_ms) + " ms\n";
    return rep;
}

RunReport run_sweep(const ExperimentConfig& cfg) {
    const SweepOutcome oc = sweep_experiment(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    RunReport rep;

    std::string csv = "n,m,l2_error,max_bound_violation,mantissa_bits\n";
    for (const SweepRow& row : oc.rows) {
        csv += std::to_string(row.n) + "," + std::to_string(row.m) + "," +
               fmt17(row.l2_error.to_double()) + "," +
               fmt17(row.max_bound_violation.to_double()) + "," +
               std::to_string(row.mantissa_bits) + "\n";
    }

    std::string js = "{\n  \"rows\": [";
    for (std::size_t i = 0; i < oc.rows.size(); ++i) {
        const SweepRow& row = oc.rows[i];
        js += (i ? ",\n    " : "\n    ");
        js += "{\"n\": " + std::to_string(row.n) +
              ", \"m\": " + std::to_string(row.m) +
              ", \"l2_error\": \"" + row.l2_error.str() +
              "\", \"max_bound_violation\": \"" + row.max_bound_violation.str() +
              "\", \"tau_budget\": \"" + row.tau_budget.str() +
              "\", \"mantissa_bits\": " + std::to_string(row.mantissa_bits) +
              ", \"sound\": " + (row.sound ? "true" : "false") +
              ", \"excluded\": " + (row.excluded ? "true" : "false") + "}";
    }
    js += "\n  ],\n  \"fit_status\": \"" + oc.fit_status + "\"";
    if (oc.fit_status != "floor") {
        js += ",\n  \"slope\": " + fmt17(oc.slope);
        js += ",\n  \"residual\": " + fmt17(oc.residual);
    }
    js += "\n}\n";

    const auto emit = [&](const std::string& name, const std::string& text) {
        const std::string path =
            (std::filesystem::path(cfg.out_dir) / name).string();
        write_text_file(path, text);
        rep.files.push_back(path);
    };
    emit("sweep.csv", csv);
    emit("sweep.json", js);

    rep.exit_code = oc.all_sound ? 0 : 1;
    rep.summary = "sweep over n =";
    for (const SweepRow& row : oc.rows) rep.summary += " " + std::to_string(row.n);
    rep.summary += "\n";
    for (const SweepRow& row : oc.rows)
        rep.summary += "  n=" + std::to_string(row.n) +
                       " l2=" + fmt6(row.l2_error.to_double()) +
                       (row.excluded ? " (floor)" : "") +
                       (row.sound ? "" : " UNSOUND") + " wall=" +
                       fmt6(row.wall_ms) + " ms\n";
    rep.summary += "fit: " + oc.fit_status;
    if (oc.fit_status != "floor")
        rep.summary += " slope=" + fmt6(oc.slope) + " residual=" + fmt6(oc.residual);
    rep.summary += "\nsoundness: " + std::string(oc.all_sound ? "pass" : "FAIL") + "\n";
    return rep;
}

RunReport run_lemma_checks(const LemmaCheckParams& params) {
    RunReport rep;
    bool all_pass = true;
    std::vector<int> Ns;
    if (params.N > 0)
        Ns.push_back(params.N);
    else
        Ns = {1, 2, 3, 4};
    for (const int N : Ns) {
        const GridCheckReport g = check_g_bound(N, params.x_max, params.g_threshold);
        all_pass = all_pass && g.pass;
        rep.summary += "g bound N=" + std::to_string(N) +
                       " x_max=" + std::to_string(params.x_max) +
                       ": max g = " + fmt6(g.max_value) + " at (" +
                       std::to_string(g.arg_x) + "," + std::to_string(g.arg_y) +
                       "), threshold " + fmt6(g.threshold) + ", points " +
                       std::to_string(g.points_checked) + ": " +
                       (g.pass ? "pass" : "FAIL") + "\n";
    }
    const PowerCheckReport pw =
        check_power_inequalities(params.k_max, params.l_max);
    all_pass = all_pass && pw.pass;
    rep.summary += "power inequalities k_max=" + std::to_string(params.k_max) +
                   " l_max=" + std::to_string(params.l_max) + ": " +
                   std::to_string(pw.checked) + " cases: " +
                   (pw.pass ? "pass" : "FAIL " + pw.first_counterexample) + "\n";
    rep.exit_code = all_pass ? 0 : 1;
    return rep;
}

}  // namespace dynsamp
