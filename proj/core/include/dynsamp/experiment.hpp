#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynsamp/config.hpp"
#include "dynsamp/diffusivity.hpp"
#include "dynsamp/initial_data.hpp"
#include "dynsamp/operator_spectrum.hpp"
#include "dynsamp/recovery.hpp"
#include "dynsamp/sampling_schedule.hpp"
#include "dynsamp/serialization.hpp"

// End-to-end pipelines: synthesize (or load) a datum, build the plan,
// sample, recover, reconstruct, bound, and judge soundness against the
// known truth.  Everything written to disk is byte-deterministic for a
// fixed config; wall-clock timings appear only in the returned summaries.
//
// Soundness of a recovery means: for every k, the realized coefficient
// error |c_k - c_bar_k| stays within the a-priori bound plus the certified
// arithmetic ledger (the ledger part separates arithmetic noise from a
// genuine bound failure).  The exit contract is 0 iff every check passed.

namespace dynsamp {

struct DatumSource {
    std::string file;    // nonempty: load JSON from this path, ignore the rest
    double r = 2.0;      // smoothness ball F_r
    long K = 200;        // modes
    double margin = 0.9; // ball norm of the generated datum, in (0,1)
    std::uint64_t seed = 0;
};

struct ExperimentConfig {
    std::optional<OperatorSpec> op;             // exclusive with profile
    std::optional<DiffusivityProfile> profile;  // non-autonomous heat
    DatumSource datum;
    std::string x0_expr = "pi*(sqrt(5)-1)/2";
    double t1 = 0.5;
    double rho = 0.0;       // used when rho_mode is empty
    std::string rho_mode;   // "", "auto" (1.05 * 2N ln 2), "auto-certified" (1.05 * 4^N)
    long n = 0;             // recover pipelines
    std::vector<long> n_sweep;  // sweep pipelines, strictly increasing
    long K_scan = 0;        // 0: max(1000, datum modes)
    double sample_tol = 1e-30;
    double a0_tol = 1e-40;
    long precision_bits = 0;  // 0: plan_precision_bits policy
    std::string out_dir = ".";
};

ExperimentConfig parse_experiment_config(const std::string& toml_text);
ExperimentConfig load_experiment_config(const std::string& path);

// The margin rules for symbolic rho; base is the operator whose order
// sets the thresholds (the heat operator for profile runs).
double resolve_rho(const ExperimentConfig& cfg, const OperatorSpec& base);

struct RecoverOutcome {
    SamplingPlan plan;
    InitialDatum datum;
    Trace trace;
    RecoveryResult result;
    bool sound = false;
    double wall_ms = 0.0;
};

// The full single-recovery pipeline, in memory.
RecoverOutcome recover_experiment(const ExperimentConfig& cfg);

struct SweepRow {
    long n = 0;
    long m = 0;
    Real l2_error{64};
    Real max_bound_violation{64};
    Real tau_budget{64};  // certified arithmetic share of the L2 error
    long mantissa_bits = 0;
    bool sound = false;
    bool excluded = false;  // l2_error <= 10 * tau_budget: precision floor
    double wall_ms = 0.0;
};

struct SweepOutcome {
    std::vector<SweepRow> rows;
    double slope = 0.0;     // least squares on (log n, log l2) over kept rows
    double residual = 0.0;  // rms fit residual
    std::string fit_status; // "ok" | "partial" | "floor"
    bool all_sound = false;
};

// One recovery per n on the same datum.
SweepOutcome sweep_experiment(const ExperimentConfig& cfg);

struct RunReport {
    int exit_code = 0;
    std::string summary;
    std::vector<std::string> files;
};

// Pipeline + files: datum.json, trace.json, recovery.json in out_dir.
RunReport run_recover(const ExperimentConfig& cfg);

// Pipeline + files: sweep.csv (17 significant digits) and sweep.json
// (full-precision decimal strings) in out_dir.
RunReport run_sweep(const ExperimentConfig& cfg);

struct LemmaCheckParams {
    int N = 0;  // 0: suite over N in {1, 2, 3, 4}
    long x_max = 500;
    long k_max = 50;
    int l_max = 8;
    std::optional<double> g_threshold;  // negative-control hook
};

RunReport run_lemma_checks(const LemmaCheckParams& params);

}  // namespace dynsamp
