#include "ccasc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ccasc/gaussian.hpp"
#include "ccasc/parallel.hpp"

namespace ccasc {

namespace {

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
    return v;
}

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

CheckReport check_threshold_sensitivity() {
    Stopwatch timer;
    CheckReport report;
    report.check_id = "threshold_sensitivity";
    report.tolerance = 1e-6;

    const std::vector<double> mus = linspace(0.3, 0.7, 9);
    const std::vector<double> ks = linspace(0.0, 1.0, 11);
    const std::vector<double> rhos = {0.5, 1.0, 2.0};
    const double h = 1e-5;

    for (double mu : mus) {
        for (double k : ks) {
            for (double rho : rhos) {
                const double analytic = threshold_k_sensitivity(mu, k, rho);
                const auto s_at = [&](double kk) {
                    return signal_threshold(mu, proxy_cutoff(kk, mu), rho);
                };
                // f''(k)=0 at k=0, so the one-sided stencil stays 2nd order
                const double fd = k >= h ? (s_at(k + h) - s_at(k - h)) / (2.0 * h)
                                         : (s_at(k + h) - s_at(k)) / h;
                const std::string inputs =
                    "mu=" + fmt(mu) + " k=" + fmt(k) + " rho=" + fmt(rho);
                if (std::abs(analytic) > 1e-8) {
                    const double rel = std::abs(analytic - fd) / std::abs(analytic);
                    if (rel >= 1e-6) {
                        report.violations.push_back(
                            {inputs + " [fd mismatch]", fd, analytic, rel});
                    }
                } else if (std::abs(analytic - fd) >= 1e-9) {
                    report.violations.push_back({inputs + " [fd mismatch near zero]", fd,
                                                 analytic, std::abs(analytic - fd)});
                }
                if (mu == 0.5) {
                    if (std::abs(analytic) > 1e-9) {
                        report.violations.push_back(
                            {inputs + " [nonzero at center]", analytic, 0.0,
                             std::abs(analytic)});
                    }
                } else if (sign_of(analytic) != sign_of(mu - 0.5)) {
                    report.violations.push_back({inputs + " [sign mismatch]", analytic,
                                                 sign_of(mu - 0.5), std::abs(analytic)});
                }
            }
        }
    }
    report.passed = report.violations.empty();
    report.runtime_seconds = timer.seconds();
    return report;
}

CheckReport check_investment_nesting(std::span<const double> k_grid,
                                     std::span<const double> mu_grid,
                                     const ModelParams& params) {
    Stopwatch timer;
    CheckReport report;
    report.check_id = "investment_nesting";
    report.tolerance = 1e-6;

    std::vector<double> ks(k_grid.begin(), k_grid.end());
    std::sort(ks.begin(), ks.end());

    const std::size_t nk = ks.size();
    const std::size_t nm = mu_grid.size();
    std::vector<double> phi(nk * nm);
    std::vector<char> invests(nk * nm);
    parallel_for(nk * nm, [&](std::size_t idx) {
        const std::size_t ik = idx / nm;
        const std::size_t im = idx % nm;
        const EquilibriumPoint ep = solve_precision(mu_grid[im], ks[ik], params);
        phi[idx] = ep.net_value_of_information;
        invests[idx] = ep.invests ? 1 : 0;
    });

    for (std::size_t i = 0; i < nk; ++i) {
        for (std::size_t j = i + 1; j < nk; ++j) {
            for (std::size_t m = 0; m < nm; ++m) {
                const bool in_lo = invests[i * nm + m];
                const bool in_hi = invests[j * nm + m];
                if (in_lo && !in_hi) {
                    const double drop = phi[i * nm + m] - phi[j * nm + m];
                    if (drop > report.tolerance) {
                        report.violations.push_back(
                            {"F=" + fmt(params.cost_F) + " mu=" + fmt(mu_grid[m]) +
                                 " k=" + fmt(ks[i]) + " k'=" + fmt(ks[j]),
                             phi[j * nm + m], phi[i * nm + m], drop});
                    }
                }
            }
        }
    }
    report.passed = report.violations.empty();
    report.runtime_seconds = timer.seconds();
    return report;
}

CheckReport check_precision_dip(const ModelParams& params) {
    Stopwatch timer;
    CheckReport report;
    report.check_id = "precision_dip";
    report.tolerance = 1e-6;

    const std::vector<double> mus = {0.45, 0.48, 0.5, 0.52, 0.55};
    const std::vector<double> ks = {0.0, 0.2, 0.4};

    for (double mu : mus) {
        std::vector<EquilibriumPoint> eps;
        eps.reserve(ks.size());
        for (double k : ks) eps.push_back(solve_precision(mu, k, params));
        for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
            const std::string inputs =
                "mu=" + fmt(mu) + " k=" + fmt(ks[i]) + "->" + fmt(ks[i + 1]);
            if (!eps[i].invests || !eps[i + 1].invests) {
                report.notes.push_back("skipped " + inputs +
                                       ": no investment at one or both points");
                continue;
            }
            const double fd =
                (eps[i + 1].rho_star - eps[i].rho_star) / (ks[i + 1] - ks[i]);
            if (mu == 0.5) {
                if (std::abs(fd) > report.tolerance) {
                    report.violations.push_back(
                        {inputs + " [center not flat]", fd, 0.0, std::abs(fd)});
                }
            } else if (fd > report.tolerance) {
                report.violations.push_back(
                    {inputs + " [rho* rises in k]", fd, 0.0, fd});
            }
        }
    }
    report.passed = report.violations.empty();
    report.runtime_seconds = timer.seconds();
    return report;
}

CheckReport check_welfare_shape(const ModelParams& params) {
    Stopwatch timer;
    CheckReport report;
    report.check_id = "welfare_shape";
    report.tolerance = 1e-9;

    const std::vector<double> ks = linspace(0.0, 1.2, 13);
    const BeliefDistribution dist;

    for (double lambda : {0.0, 0.5}) {
        const auto curve = welfare_curve(ks, lambda, params, dist);
        std::vector<double> values;
        values.reserve(curve.size());
        std::string rendered;
        for (const auto& pt : curve) {
            values.push_back(pt.aggregate.average);
            rendered += (rendered.empty() ? "" : " ") + fmt(pt.aggregate.average);
        }
        const CurveShape shape = detect_shape(values, report.tolerance);
        if (shape != CurveShape::InvertedU) {
            report.violations.push_back(
                {"lambda=" + fmt(lambda) + " shape=" + to_string(shape) +
                     " curve=[" + rendered + "]",
                 static_cast<double>(shape), static_cast<double>(CurveShape::InvertedU),
                 0.0});
        }
    }

    const DerivativeEstimate d = local_k_derivative_aggregate(1.0, params, dist);
    if (d.estimate < -1e-6) {
        report.violations.push_back({"lambda=1 right-derivative at k=0", d.estimate,
                                     0.0, -d.estimate});
    } else {
        report.notes.push_back("lambda=1 right-derivative at k=0: " + fmt(d.estimate) +
                               " (step consistency " + fmt(d.step_consistency) + ")");
    }

    report.passed = report.violations.empty();
    report.runtime_seconds = timer.seconds();
    return report;
}

CheckReport check_proxy_bound_on_paths(const SimConfig& config, int n_paths) {
    Stopwatch timer;
    if (config.params.bonus.kind != BonusKind::Proportional) {
        throw std::invalid_argument(
            "check_proxy_bound_on_paths: proportional bonus required");
    }
    CheckReport report;
    report.check_id = "proxy_bound";
    report.tolerance = 1e-12;

    const EnsembleStats stats = ensemble_statistics(config, n_paths);
    report.notes.push_back("paths=" + std::to_string(n_paths) +
                           " steps=" + std::to_string(stats.total_steps) +
                           " cascade_frequency=" + fmt(stats.cascade_frequency) +
                           " proxy_gap_max=" + fmt(stats.proxy_gap_max));
    if (stats.proxy_bound_violation_max > report.tolerance) {
        report.violations.push_back({"max over steps of gap - k|p1-mu|",
                                     stats.proxy_bound_violation_max, 0.0,
                                     stats.proxy_bound_violation_max});
    }
    if (stats.proxy_sign_mismatches > 0) {
        report.violations.push_back(
            {"cutoff-shift sign agreement when |mu-1/2| > |p1-mu|",
             static_cast<double>(stats.proxy_sign_mismatches), 0.0,
             static_cast<double>(stats.proxy_sign_mismatches)});
    }
    report.passed = report.violations.empty();
    report.runtime_seconds = timer.seconds();
    return report;
}

VerifyContext VerifyContext::defaults() {
    VerifyContext ctx;
    ctx.params_light.bonus = {BonusKind::Proportional, 0.0};
    ctx.params_light.cost_c = 0.6;
    ctx.params_light.cost_F = 0.06;
    ctx.params_heavy = ctx.params_light;
    ctx.params_heavy.cost_F = 0.16;
    ctx.k_grid = linspace(0.0, 1.2, 13);
    ctx.mu_grid = BeliefDistribution{}.points();
    ctx.sim.params = ctx.params_light;
    ctx.sim.params.bonus = {BonusKind::Proportional, 0.4};
    ctx.sim.horizon = 100;
    ctx.sim.seed = 12345;
    ctx.sim_paths = 2000;
    return ctx;
}

std::vector<std::string> all_check_ids() {
    return {"threshold_sensitivity",   "investment_nesting_light",
            "investment_nesting_heavy", "investment_nesting_prohibitive",
            "precision_dip",           "welfare_shape",
            "proxy_bound"};
}

CheckReport run_check(const std::string& id, const VerifyContext& ctx) {
    const std::uint64_t clips_before = clip_event_count();
    CheckReport report;
    if (id == "threshold_sensitivity") {
        report = check_threshold_sensitivity();
    } else if (id == "investment_nesting_light") {
        report = check_investment_nesting(ctx.k_grid, ctx.mu_grid, ctx.params_light);
    } else if (id == "investment_nesting_heavy") {
        report = check_investment_nesting(ctx.k_grid, ctx.mu_grid, ctx.params_heavy);
    } else if (id == "investment_nesting_prohibitive") {
        ModelParams prohibitive = ctx.params_light;
        prohibitive.cost_F = 1e6;  // empty regions are trivially nested
        report = check_investment_nesting(ctx.k_grid, ctx.mu_grid, prohibitive);
    } else if (id == "precision_dip") {
        report = check_precision_dip(ctx.params_light);
    } else if (id == "welfare_shape") {
        report = check_welfare_shape(ctx.params_heavy);
    } else if (id == "proxy_bound") {
        report = check_proxy_bound_on_paths(ctx.sim, ctx.sim_paths);
    } else {
        std::string known;
        for (const std::string& c : all_check_ids()) known += " " + c;
        throw std::invalid_argument("unknown check id: " + id + " (known:" + known + ")");
    }
    report.check_id = id;
    const std::uint64_t clips = clip_event_count() - clips_before;
    if (clips > 0) {
        report.notes.push_back("probability clip events during check: " +
                               std::to_string(clips));
    }
    return report;
}

std::vector<CheckReport> run_all(const VerifyContext& ctx,
                                 std::span<const std::string> ids) {
    std::vector<CheckReport> reports;
    reports.reserve(ids.size());
    for (const std::string& id : ids) {
        reports.push_back(run_check(id, ctx));
    }
    return reports;
}

std::string reports_to_json(std::span<const CheckReport> reports, bool include_runtime) {
    nlohmann::json doc;
    doc["all_passed"] = all_passed(reports);
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckReport& r : reports) {
        nlohmann::json jr;
        jr["check_id"] = r.check_id;
        jr["passed"] = r.passed;
        jr["tolerance"] = r.tolerance;
        if (include_runtime) jr["runtime_seconds"] = r.runtime_seconds;
        nlohmann::json jv = nlohmann::json::array();
        for (const Violation& v : r.violations) {
            jv.push_back({{"inputs", v.inputs},
                          {"observed", v.observed},
                          {"expected", v.expected},
                          {"gap", v.gap}});
        }
        jr["violations"] = jv;
        jr["notes"] = r.notes;
        arr.push_back(jr);
    }
    doc["reports"] = arr;
    return doc.dump(2);
}

bool all_passed(std::span<const CheckReport> reports) {
    for (const CheckReport& r : reports) {
        if (!r.passed) return false;
    }
    return true;
}

}  // namespace ccasc
