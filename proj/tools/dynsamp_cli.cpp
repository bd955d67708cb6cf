// dynsamp: recover initial data of a linear evolution PDE from time samples
// at one spatial point, on geometrically spaced times.
//
//   dynsamp recover <config.toml> [--out DIR]
//   dynsamp sweep <config.toml> [--out DIR]
//   dynsamp check-lemmas [--n N] [--xmax X] [--kmax K] [--lmax L]
//                        [--g-threshold T] [--out DIR]
//   dynsamp scan-x0 <expr> [--kscan K]
//
// Exit codes: 0 all checks passed, 1 a soundness/lemma check failed,
// 2 configuration or runtime error.  DYNSAMP_PREC_CEILING (mantissa bits)
// caps the automatic precision raising.

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "dynsamp/errors.hpp"
#include "dynsamp/experiment.hpp"
#include "dynsamp/sampling_schedule.hpp"

namespace {

int finish(const dynsamp::RunReport& rep) {
    std::fputs(rep.summary.c_str(), stdout);
    for (const std::string& f : rep.files) std::printf("wrote %s\n", f.c_str());
    return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"initial-datum recovery from one-point time samples"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;

    CLI::App* rec = app.add_subcommand("recover", "run one recovery pipeline");
    rec->add_option("config", config_path, "experiment config (TOML)")
        ->required()
        ->check(CLI::ExistingFile);
    rec->add_option("--out", out_dir, "output directory (overrides config)");

    CLI::App* swp = app.add_subcommand("sweep", "recoveries over an n list, rate fit");
    swp->add_option("config", config_path, "experiment config (TOML)")
        ->required()
        ->check(CLI::ExistingFile);
    swp->add_option("--out", out_dir, "output directory (overrides config)");

    dynsamp::LemmaCheckParams lemma;
    double g_threshold = 0.0;
    CLI::App* chk = app.add_subcommand("check-lemmas", "grid checks of the inequalities");
    chk->add_option("--n", lemma.N, "operator half-order N (0: suite over 1..4)")
        ->check(CLI::Range(0, 16));
    chk->add_option("--xmax", lemma.x_max, "g-grid extent")->check(CLI::PositiveNumber);
    chk->add_option("--kmax", lemma.k_max, "power-inequality base range")
        ->check(CLI::PositiveNumber);
    chk->add_option("--lmax", lemma.l_max, "power-inequality exponent range")
        ->check(CLI::PositiveNumber);
    CLI::Option* gt = chk->add_option("--g-threshold", g_threshold,
                                      "override the g bound threshold (negative control)");
    chk->add_option("--out", out_dir, "write the report into this directory");

    std::string x0_expr;
    long k_scan = 1000000;
    CLI::App* scan = app.add_subcommand("scan-x0", "scan min_k k|sin(k x0)|");
    scan->add_option("expr", x0_expr, "sampling point expression, e.g. \"pi*(sqrt(5)-1)/2\"")
        ->required();
    scan->add_option("--kscan", k_scan, "scan depth")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (rec->parsed() || swp->parsed()) {
            dynsamp::ExperimentConfig cfg = dynsamp::load_experiment_config(config_path);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            return finish(rec->parsed() ? dynsamp::run_recover(cfg)
                                        : dynsamp::run_sweep(cfg));
        }
        if (chk->parsed()) {
            if (gt->count() > 0) lemma.g_threshold = g_threshold;
            const dynsamp::RunReport rep = dynsamp::run_lemma_checks(lemma);
            std::fputs(rep.summary.c_str(), stdout);
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                const std::string path =
                    (std::filesystem::path(out_dir) / "lemma_checks.txt").string();
                dynsamp::write_text_file(path, rep.summary);
                std::printf("wrote %s\n", path.c_str());
            }
            return rep.exit_code;
        }
        const dynsamp::Real x0 = dynsamp::parse_x0_expression(x0_expr, 192);
        const double d0 = dynsamp::scan_sampling_point(x0, k_scan);
        std::printf("x0 = %s\nd0 = min_{k<=%ld} k|sin(k x0)| = %.17g\n",
                    x0.rounded_to(64).str().c_str(), k_scan, d0);
        return 0;
    } catch (const dynsamp::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
