#pragma once
// Comparative-statics verification harness: brute-force scans and
// finite-difference oracles packaged as runnable checks with
// machine-readable verdicts.

#include <span>
#include <string>
#include <vector>

#include "ccasc/cascade.hpp"
#include "ccasc/welfare.hpp"

namespace ccasc {

struct Violation {
    std::string inputs;
    double observed = 0.0;
    double expected = 0.0;
    double gap = 0.0;
};

struct CheckReport {
    std::string check_id;
    bool passed = false;  // passed <=> violations empty
    std::vector<Violation> violations;
    std::vector<std::string> notes;  // skipped cells, context
    double tolerance = 0.0;
    double runtime_seconds = 0.0;
};

// Analytic d s*/d k vs central finite differences (rel. err < 1e-6) and the
// sign identity sign(ds*/dk) = sign(mu - 1/2) on a (mu, k, rho) grid.
CheckReport check_threshold_sensitivity();

// Investment masks over sorted k must be nested (all ordered pairs); a pair
// counts as a violation only when the net-value drop exceeds the 1e-6 slack.
CheckReport check_investment_nesting(std::span<const double> k_grid,
                                     std::span<const double> mu_grid,
                                     const ModelParams& params);

// Finite-difference d rho*/d k <= tol at mu in {0.45,0.48,0.52,0.55} and
// |d rho*/d k| <= tol at mu = 0.5, over k in {0,0.2,0.4}; cells where either
// endpoint does not invest are skipped and reported in notes.
CheckReport check_precision_dip(const ModelParams& params);

// detect_shape == InvertedU for lambda in {0, 0.5} on the k-grid
// {0,0.1,...,1.2}; right derivative at k=0 >= -1e-6 for lambda = 1.
CheckReport check_welfare_shape(const ModelParams& params);

// Runs an ensemble and asserts the cutoff-proxy bound on every step, plus
// sign agreement of (c - 1/2) and (c~ - 1/2) whenever |mu-1/2| > |p1-mu|.
// Rejects the fixed-indicator bonus (bound is proportional-only).
CheckReport check_proxy_bound_on_paths(const SimConfig& config, int n_paths);

struct VerifyContext {
    ModelParams params_light;  // c=0.6, F=0.06
    ModelParams params_heavy;  // c=0.6, F=0.16
    std::vector<double> k_grid;   // default {0,0.1,...,1.2}
    std::vector<double> mu_grid;  // default 97-point grid on [0.02,0.98]
    SimConfig sim;                // proportional k=0.4 on the light calibration
    int sim_paths = 2000;

    static VerifyContext defaults();
};

// Known check ids, in canonical order.
std::vector<std::string> all_check_ids();

// Runs one check by id; throws std::invalid_argument for unknown ids.
CheckReport run_check(const std::string& id, const VerifyContext& ctx);

// Runs the listed checks (empty list -> empty result).
std::vector<CheckReport> run_all(const VerifyContext& ctx,
                                 std::span<const std::string> ids);

// JSON rendering; runtime_seconds is omitted when include_runtime is false
// so reports can be compared bit-for-bit.
std::string reports_to_json(std::span<const CheckReport> reports,
                            bool include_runtime = true);

bool all_passed(std::span<const CheckReport> reports);

}  // namespace ccasc
