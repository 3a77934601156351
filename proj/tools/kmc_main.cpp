#include <iostream>

#include "CLI11.hpp"
#include "kmc/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic toolkit for symmetric centralizers of real roots in "
                 "Kac-Moody root systems"};
    app.require_subcommand(1);

    std::string input, alpha_spec, format = "json", resume_dir;
    long long cap = 40, budget = 500;
    int rank_min = 3, rank_max = 10, workers = 0;

    auto add_common = [&](CLI::App* cmd, bool with_limits) {
        cmd->add_option("--format", format, "Output format: json or tsv")
            ->check(CLI::IsMember({"json", "tsv"}));
        if (with_limits) {
            cmd->add_option("--cap", cap, "Height cap for root enumeration")
                ->check(CLI::PositiveNumber);
            cmd->add_option("--budget", budget, "Chamber budget for certification")
                ->check(CLI::PositiveNumber);
        }
    };

    CLI::App* classify = app.add_subcommand("classify", "Classify a generalized Cartan matrix");
    classify->add_option("input", input, "Matrix file or inline JSON matrix")->required();
    add_common(classify, false);

    CLI::App* zs = app.add_subcommand(
        "zs", "Compute and certify the symmetric centralizer subsystem of a real root");
    zs->add_option("input", input, "Matrix file or inline JSON matrix")->required();
    zs->add_option("--alpha", alpha_spec,
                   "Defining root: 1-based simple-root index or comma-separated vector")
        ->required();
    add_common(zs, true);

    CLI::App* table = app.add_subcommand(
        "affine-table", "Centralizer types of every affine family, with match flags");
    add_common(table, false);

    CLI::App* atlas = app.add_subcommand(
        "atlas", "Batch reports over the symmetrizable hyperbolic catalog");
    atlas->add_option("--rank-min", rank_min, "Smallest rank (>= 3)");
    atlas->add_option("--rank-max", rank_max, "Largest rank (<= 10)");
    atlas->add_option("--resume", resume_dir, "Directory of per-record files for resumable runs");
    atlas->add_option("--workers", workers,
                      "Worker threads (default: KMC_WORKERS env var, else hardware)");
    add_common(atlas, true);

    CLI::App* render = app.add_subcommand("render", "Emit the Dynkin diagram as DOT");
    render->add_option("input", input, "Matrix file or inline JSON matrix")->required();
    std::string render_format = "dot";
    render->add_option("--format", render_format, "Output format: dot")
        ->check(CLI::IsMember({"dot"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        kmc::RunConfig cfg;
        cfg.height_cap = cap;
        cfg.chamber_budget = budget;
        cfg.format = kmc::parse_format(format);
        kmc::CommandResult res;
        if (app.got_subcommand(classify))
            res = kmc::run_classify(input, cfg);
        else if (app.got_subcommand(zs))
            res = kmc::run_zs(input, alpha_spec, cfg);
        else if (app.got_subcommand(table))
            res = kmc::run_affine_table(cfg);
        else if (app.got_subcommand(atlas))
            res = kmc::run_atlas(rank_min, rank_max, cfg, resume_dir, workers);
        else
            res = kmc::run_render(input);
        std::cout << res.output;
        return res.exit_code;
    } catch (const kmc::KmcError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
