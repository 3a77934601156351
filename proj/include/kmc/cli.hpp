#pragma once

#include <string>

#include "kmc/affine.hpp"
#include "kmc/cones.hpp"
#include "kmc/diophantine.hpp"

namespace kmc {

class InputError : public KmcError {
public:
    explicit InputError(const std::string& what) : KmcError(what) {}
};

enum class OutputFormat { Json, Tsv, Dot };

OutputFormat parse_format(const std::string& name);  // "json" | "tsv" | "dot"

// Batch-run limits and rendering options shared by the commands.
struct RunConfig {
    Coeff height_cap = 40;
    long long chamber_budget = 500;
    std::vector<Coeff> moduli = {2, 3, 4, 8, 12, 16, 24};
    OutputFormat format = OutputFormat::Json;

    void validate() const;  // throws InputError unless all limits positive
};

// Accepts an inline JSON matrix ("[[2,-1],[-1,2]]") or a path to a file
// holding either a JSON matrix or whitespace-separated integer rows.
Gcm parse_gcm_input(const std::string& input);

// "--alpha" argument: 1-based simple-root index, or a comma-separated
// coefficient vector. The result is verified to be a positive real root.
Vec parse_alpha(const RootSystem& sys, const std::string& spec);

// "2α_1+α_2+α_4+α_5" rendering of a nonnegative coefficient vector.
std::string root_to_string(const Vec& v);

struct CommandResult {
    int exit_code = 0;  // 0 success, 1 mismatch/verification failure
    std::string output;
};

// Classification report: class, standard name when known, symmetrization.
CommandResult run_classify(const std::string& input, const RunConfig& cfg);

// Full Z_s(alpha) report: members below the cap, greedy basis, and a
// certification verdict (Certified / A1 / Empty / UpToHeight(H) /
// Inconclusive) with the certifying mechanism spelled out.
CommandResult run_zs(const std::string& input, const std::string& alpha_spec,
                     const RunConfig& cfg);

// Affine centralizer-type table over every family at its two smallest legal
// ranks, one row per root-length class, with computed/expected match flags.
// Exit code 1 when any row mismatches.
CommandResult run_affine_table(const RunConfig& cfg);

// DOT rendering of the Dynkin diagram.
CommandResult run_render(const std::string& input);

// Batch reports over the symmetrizable hyperbolic catalog: one record per
// (system, merged simple-root orbit), resumable via per-record files in
// `resume_dir` (empty = no persistence). `workers` <= 0 selects a default
// from the KMC_WORKERS environment variable or the hardware concurrency.
CommandResult run_atlas(int rank_min, int rank_max, const RunConfig& cfg,
                        const std::string& resume_dir, int workers);

}  // namespace kmc
