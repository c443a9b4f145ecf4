#pragma once
// Sequential Monte Carlo simulator: agents arrive one by one, optionally buy
// a Gaussian signal at the equilibrium precision rho*(mu,k), act through the
// cutoff rule, and a Bayesian observer updates the public belief from the
// observed action using the same equilibrium likelihoods.  With unbounded
// Gaussian likelihood ratios a cascade is exactly the rho* = 0 regime:
// the action stops depending on any obtainable signal and beliefs freeze.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccasc/precision.hpp"

namespace ccasc {

struct AgentStep {
    int index = 0;  // 1-based arrival order
    double mu_before = 0.5;
    double mu_after = 0.5;
    double p1_empirical = 0.5;  // predecessor share of action 1 (1/2 when empty)
    bool invested = false;
    double rho = 0.0;
    std::optional<double> signal;
    double cutoff = 0.5;  // raw posterior cutoff used for the decision
    int action = 0;
    bool was_informative = false;
};

enum class CascadeType { None, OneCascade, ZeroCascade };

const char* to_string(CascadeType type);

struct CascadePath {
    int theta = 0;
    std::vector<AgentStep> steps;
    std::optional<int> cascade_onset;  // 1-based step index
    CascadeType cascade_type = CascadeType::None;
    std::uint64_t seed = 0;
};

struct SimConfig {
    ModelParams params;
    int horizon = 100;
    std::uint64_t seed = 0;
    double mu0 = 0.5;
    std::optional<int> fixed_theta;  // draw from the 1/2 prior when absent

    void validate() const;
};

// Memoizes rho* solves per (rounded mu, rounded p1) cell at 1e-6 resolution;
// shared across the paths of an ensemble.  Thread-safe; values are pure
// functions of the cell so sharing cannot change results.
class PrecisionCache {
  public:
    explicit PrecisionCache(const ModelParams& params);
    ~PrecisionCache();
    const EquilibriumPoint& lookup(double mu, const Popularity& pop);
    std::size_t size() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

CascadePath simulate_path(const SimConfig& config);
CascadePath simulate_path(const SimConfig& config, PrecisionCache& cache);

struct CascadeDetection {
    std::optional<int> onset;
    CascadeType type = CascadeType::None;
};

// First step from which every remaining step is uninvested with a constant
// action (beliefs are frozen there).  In proxy mode this is simply the first
// uninvested step, since the no-investment regime is absorbing.
CascadeDetection detect_cascade(const CascadePath& path);

struct EnsembleStats {
    int n_paths = 0;
    int horizon = 0;
    std::uint64_t n_cascades = 0;
    double cascade_frequency = 0.0;
    double mean_onset = 0.0;          // over cascading paths; 0 when none
    double correct_cascade_share = 0.0;
    double proxy_gap_max = 0.0;       // max |c(p1) - c~(mu)| over steps
    double proxy_bound_violation_max = 0.0;  // max (gap - k|p1-mu|), <= 1e-12
    // martingale diagnostics pool the informative steps only (uninformative
    // steps leave the belief unchanged identically)
    double martingale_residual = 0.0;  // |mean one-step belief change|
    double martingale_se = 0.0;        // standard error of that mean
    std::uint64_t proxy_sign_mismatches = 0;  // sign(c-1/2) vs sign(c~-1/2)
    std::uint64_t informative_steps = 0;
    std::uint64_t total_steps = 0;
};

// Runs n_paths paths with per-path seeds config.seed + i.  Summaries are
// reduced in path order, so results are independent of thread count.
EnsembleStats ensemble_statistics(const SimConfig& config, int n_paths);

// One CSV row per agent step, columns:
// path_id,step,theta,mu_before,p1_empirical,invested,rho,signal,cutoff,action,mu_after
std::string paths_to_csv(std::span<const CascadePath> paths);

std::string ensemble_to_json(const EnsembleStats& stats);

}  // namespace ccasc
