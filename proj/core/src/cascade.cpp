#include "ccasc/cascade.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "ccasc/csv.hpp"
#include "ccasc/gaussian.hpp"
#include "ccasc/parallel.hpp"
#include "ccasc/rng.hpp"

namespace ccasc {

namespace {

// RNG stream ids, fixed for reproducibility of serialized paths.
constexpr std::uint64_t kStreamTheta = 0;
constexpr std::uint64_t kStreamSignal = 1;

constexpr double kCellResolution = 1e6;  // mu and p1 rounded to 1e-6

std::uint64_t quantize(double x) {
    return static_cast<std::uint64_t>(std::llround(x * kCellResolution));
}

}  // namespace

const char* to_string(CascadeType type) {
    switch (type) {
        case CascadeType::None: return "none";
        case CascadeType::OneCascade: return "one_cascade";
        case CascadeType::ZeroCascade: return "zero_cascade";
    }
    return "none";
}

void SimConfig::validate() const {
    params.validate();
    if (horizon < 1) {
        throw std::invalid_argument("SimConfig: horizon must be >= 1");
    }
    if (!(mu0 > 0.0 && mu0 < 1.0)) {
        throw std::invalid_argument("SimConfig: mu0 outside (0,1)");
    }
    if (fixed_theta && *fixed_theta != 0 && *fixed_theta != 1) {
        throw std::invalid_argument("SimConfig: theta must be 0 or 1");
    }
}

struct PrecisionCache::Impl {
    ModelParams params;
    std::unordered_map<std::uint64_t, EquilibriumPoint> cells;
    std::mutex mutex;
};

PrecisionCache::PrecisionCache(const ModelParams& params) : impl_(new Impl) {
    impl_->params = params;
}

PrecisionCache::~PrecisionCache() = default;

std::size_t PrecisionCache::size() const {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    return impl_->cells.size();
}

const EquilibriumPoint& PrecisionCache::lookup(double mu, const Popularity& pop) {
    // Solve at the cell representative, so every mu in the cell shares one
    // rho*; the 1e-6 rounding error is the documented cache granularity.
    std::uint64_t mu_q = quantize(mu);
    mu_q = std::min<std::uint64_t>(std::max<std::uint64_t>(mu_q, 1), 999999);
    const bool empirical = pop.source == PopularitySource::EmpiricalCounts;
    const std::uint64_t p1_q = empirical ? quantize(pop.p1) : mu_q;
    const std::uint64_t key = (mu_q << 21) ^ p1_q;

    std::lock_guard<std::mutex> lock(impl_->mutex);
    auto it = impl_->cells.find(key);
    if (it != impl_->cells.end()) return it->second;

    const double mu_cell = static_cast<double>(mu_q) / kCellResolution;
    const Popularity pop_cell =
        empirical ? Popularity{static_cast<double>(p1_q) / kCellResolution,
                               PopularitySource::EmpiricalCounts}
                  : Popularity::proxy(mu_cell);
    EquilibriumPoint ep =
        solve_precision(mu_cell, impl_->params.bonus.k, impl_->params, pop_cell);
    return impl_->cells.emplace(key, ep).first->second;
}

CascadePath simulate_path(const SimConfig& config) {
    PrecisionCache cache(config.params);
    return simulate_path(config, cache);
}

CascadePath simulate_path(const SimConfig& config, PrecisionCache& cache) {
    config.validate();
    const ModelParams& params = config.params;

    CascadePath path;
    path.seed = config.seed;
    path.theta = config.fixed_theta
                     ? *config.fixed_theta
                     : (rng::uniform(config.seed, kStreamTheta, 0, 0) < 0.5 ? 1 : 0);
    path.steps.reserve(static_cast<std::size_t>(config.horizon));

    double mu = config.mu0;
    std::uint64_t ones = 0;
    for (int t = 1; t <= config.horizon; ++t) {
        const Popularity emp = Popularity::from_counts(ones, static_cast<std::uint64_t>(t - 1));
        const Popularity pop =
            params.popularity_mode == PopularitySource::EmpiricalCounts
                ? emp
                : Popularity::proxy(mu);
        const double cutoff = posterior_cutoff(params.bonus, pop).raw;
        const EquilibriumPoint& ep = cache.lookup(mu, pop);

        AgentStep step;
        step.index = t;
        step.mu_before = mu;
        step.p1_empirical = emp.p1;
        step.cutoff = cutoff;

        double s_thr = 0.0;
        bool informative = ep.invests;
        if (informative) {
            s_thr = signal_threshold(mu, cutoff, ep.rho_star);
            if (std::isinf(s_thr)) informative = false;  // forced-action knife edge
        }
        if (informative) {
            step.invested = true;
            step.rho = ep.rho_star;
            const double z = rng::normal(config.seed, kStreamSignal,
                                         static_cast<std::uint64_t>(t), 0);
            const double s = path.theta + z / std::sqrt(ep.rho_star);
            step.signal = s;
            step.action = s >= s_thr ? 1 : 0;
            const ActionProbabilities probs = action_probabilities(mu, s_thr, ep.rho_star);
            step.mu_after = bayes_update(mu, step.action, probs);
            step.was_informative = true;
        } else {
            const UninformedAction ua = uninformed_action(mu, params, pop);
            step.invested = false;
            step.rho = 0.0;
            step.action = ua.action;
            step.mu_after = mu;  // uninformative: belief unchanged, bit-identical
            step.was_informative = false;
        }
        path.steps.push_back(step);
        ones += static_cast<std::uint64_t>(step.action);
        mu = step.mu_after;
    }

    const CascadeDetection det = detect_cascade(path);
    path.cascade_onset = det.onset;
    path.cascade_type = det.type;
    return path;
}

CascadeDetection detect_cascade(const CascadePath& path) {
    CascadeDetection det;
    if (path.steps.empty()) return det;
    // Maximal terminal run of uninvested steps with a constant action: there
    // the belief is frozen and no obtainable signal can move the action.
    std::size_t start = path.steps.size();
    const int last_action = path.steps.back().action;
    for (std::size_t i = path.steps.size(); i-- > 0;) {
        const AgentStep& s = path.steps[i];
        if (s.invested || s.action != last_action) break;
        start = i;
    }
    if (start == path.steps.size()) return det;
    det.onset = path.steps[start].index;
    det.type = last_action == 1 ? CascadeType::OneCascade : CascadeType::ZeroCascade;
    return det;
}

EnsembleStats ensemble_statistics(const SimConfig& config, int n_paths) {
    if (n_paths < 1) {
        throw std::invalid_argument("ensemble_statistics: n_paths must be >= 1");
    }
    config.validate();
    const bool proportional = config.params.bonus.kind == BonusKind::Proportional;
    const double k = config.params.bonus.k;

    struct PathSummary {
        bool cascaded = false;
        int onset = 0;
        bool correct = false;
        double dmu_sum = 0.0;
        double dmu_sum2 = 0.0;
        std::uint64_t informative = 0;
        double gap_max = 0.0;
        double viol_max = -1.0;
        std::uint64_t sign_mismatches = 0;
        std::uint64_t steps = 0;
    };

    PrecisionCache cache(config.params);
    std::vector<PathSummary> summaries(static_cast<std::size_t>(n_paths));

    parallel_for(static_cast<std::size_t>(n_paths), [&](std::size_t i) {
        SimConfig cfg = config;
        cfg.seed = config.seed + i;  // per-path seed
        const CascadePath path = simulate_path(cfg, cache);
        PathSummary& ps = summaries[i];
        ps.steps = path.steps.size();
        if (path.cascade_onset) {
            ps.cascaded = true;
            ps.onset = *path.cascade_onset;
            const int cascade_action =
                path.cascade_type == CascadeType::OneCascade ? 1 : 0;
            ps.correct = cascade_action == path.theta;
        }
        for (const AgentStep& s : path.steps) {
            if (s.was_informative) {
                const double d = s.mu_after - s.mu_before;
                ps.dmu_sum += d;
                ps.dmu_sum2 += d * d;
                ++ps.informative;
            }
            if (proportional) {
                const BonusSpec spec = config.params.bonus;
                const ProxyErrorBound pe =
                    proxy_error_bound(spec, s.p1_empirical, s.mu_before);
                ps.gap_max = std::max(ps.gap_max, pe.exact_gap);
                ps.viol_max = std::max(ps.viol_max, pe.exact_gap - pe.bound);
                if (std::abs(s.mu_before - 0.5) >
                    std::abs(s.p1_empirical - s.mu_before)) {
                    const double exact_shift = k * (s.p1_empirical - 0.5);
                    const double proxy_shift = k * (s.mu_before - 0.5);
                    if (exact_shift * proxy_shift < 0.0) ++ps.sign_mismatches;
                }
            }
        }
    });

    EnsembleStats stats;
    stats.n_paths = n_paths;
    stats.horizon = config.horizon;
    double dmu_sum = 0.0, dmu_sum2 = 0.0;
    double onset_sum = 0.0;
    std::uint64_t n_correct = 0;
    for (const PathSummary& ps : summaries) {  // path order: deterministic
        stats.total_steps += ps.steps;
        stats.informative_steps += ps.informative;
        dmu_sum += ps.dmu_sum;
        dmu_sum2 += ps.dmu_sum2;
        if (ps.cascaded) {
            ++stats.n_cascades;
            onset_sum += ps.onset;
            if (ps.correct) ++n_correct;
        }
        stats.proxy_gap_max = std::max(stats.proxy_gap_max, ps.gap_max);
        stats.proxy_bound_violation_max =
            std::max(stats.proxy_bound_violation_max, ps.viol_max);
        stats.proxy_sign_mismatches += ps.sign_mismatches;
    }
    stats.cascade_frequency =
        static_cast<double>(stats.n_cascades) / static_cast<double>(n_paths);
    if (stats.n_cascades > 0) {
        stats.mean_onset = onset_sum / static_cast<double>(stats.n_cascades);
        stats.correct_cascade_share =
            static_cast<double>(n_correct) / static_cast<double>(stats.n_cascades);
    }
    const double n = static_cast<double>(stats.informative_steps);
    if (n > 0.0) {
        const double mean = dmu_sum / n;
        stats.martingale_residual = std::abs(mean);
        if (n > 1.0) {
            const double var = std::max(0.0, (dmu_sum2 - dmu_sum * dmu_sum / n) / (n - 1.0));
            stats.martingale_se = std::sqrt(var / n);
        }
    }
    return stats;
}

std::string paths_to_csv(std::span<const CascadePath> paths) {
    CsvWriter w;
    w.header({"path_id", "step", "theta", "mu_before", "p1_empirical", "invested",
              "rho", "signal", "cutoff", "action", "mu_after"});
    for (std::size_t id = 0; id < paths.size(); ++id) {
        const CascadePath& path = paths[id];
        for (const AgentStep& s : path.steps) {
            w.field(static_cast<std::uint64_t>(id))
                .field(s.index)
                .field(path.theta)
                .field(s.mu_before)
                .field(s.p1_empirical)
                .field(s.invested)
                .field(s.rho)
                .field(s.signal)
                .field(s.cutoff)
                .field(s.action)
                .field(s.mu_after);
            w.end_row();
        }
    }
    return w.str();
}

std::string ensemble_to_json(const EnsembleStats& stats) {
    nlohmann::json j;
    j["n_paths"] = stats.n_paths;
    j["horizon"] = stats.horizon;
    j["n_cascades"] = stats.n_cascades;
    j["cascade_frequency"] = stats.cascade_frequency;
    j["mean_onset"] = stats.mean_onset;
    j["correct_cascade_share"] = stats.correct_cascade_share;
    j["proxy_gap_max"] = stats.proxy_gap_max;
    j["proxy_bound_violation_max"] = stats.proxy_bound_violation_max;
    j["martingale_residual"] = stats.martingale_residual;
    j["martingale_se"] = stats.martingale_se;
    j["proxy_sign_mismatches"] = stats.proxy_sign_mismatches;
    j["informative_steps"] = stats.informative_steps;
    j["total_steps"] = stats.total_steps;
    return j.dump(2);
}

}  // namespace ccasc
