// Acceptance suite: runs the numbered criteria and prints one PASS/FAIL line
// per criterion.  Usage: ccasc_acceptance [N | all]; exits nonzero when any
// executed criterion fails.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ccasc/cascade.hpp"
#include "ccasc/csv.hpp"
#include "ccasc/gaussian.hpp"
#include "ccasc/rng.hpp"
#include "ccasc/verify.hpp"
#include "ccasc/welfare.hpp"

using namespace ccasc;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

ModelParams calib(double F) {
    ModelParams p;
    p.bonus = {BonusKind::Proportional, 0.0};
    p.cost_c = 0.6;
    p.cost_F = F;
    return p;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return v;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

// 1. Threshold identities at the central belief (exact, 1e-12).
Outcome criterion1() {
    Outcome out;
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double k = 2.0 * i / 20.0;
        const double c = proxy_cutoff(k, 0.5);
        worst = std::max(worst, std::abs(c - 0.5));
        for (double rho : {0.5, 1.0, 2.0, 5.0}) {
            const double s = signal_threshold(0.5, c, rho);
            worst = std::max(worst, std::abs(s - 0.5));
        }
    }
    out.passed = worst <= 1e-12;
    out.detail = "max deviation " + fmt(worst);
    return out;
}

// 2. Analytic ds*/dk vs finite differences, and the sign identity.
Outcome criterion2() {
    const CheckReport report = check_threshold_sensitivity();
    Outcome out;
    out.passed = report.passed;
    out.detail = std::to_string(report.violations.size()) + " violations";
    return out;
}

// 3. Investment-region nesting over k in {0,...,1.2} at F in {0.06, 0.16}.
Outcome criterion3() {
    const std::vector<double> ks = linspace(0.0, 1.2, 13);
    const std::vector<double> mus = BeliefDistribution{}.points();
    Outcome out;
    out.passed = true;
    for (double F : {0.06, 0.16}) {
        const CheckReport report = check_investment_nesting(ks, mus, calib(F));
        out.detail += "F=" + fmt(F) + ": " + std::to_string(report.violations.size()) +
                      " violations";
        if (!report.passed) {
            out.passed = false;
            out.detail += " (first: " + report.violations.front().inputs + ")";
        }
        out.detail += "; ";
    }
    return out;
}

// 4. Net value of information at mu = 1/2 is k-invariant to 1e-8.
Outcome criterion4() {
    const ModelParams params = calib(0.06);
    const double base = net_value_of_information(0.5, 0.0, params);
    double worst = 0.0;
    for (int i = 0; i <= 12; ++i) {
        const double k = 1.2 * i / 12.0;
        worst = std::max(worst, std::abs(net_value_of_information(0.5, k, params) - base));
    }
    Outcome out;
    out.passed = worst < 1e-8;
    out.detail = "max |Phi(0.5,k) - Phi(0.5,0)| = " + fmt(worst);
    return out;
}

// 5. Precision dip near the center at the light calibration.
Outcome criterion5() {
    const CheckReport report = check_precision_dip(calib(0.06));
    Outcome out;
    out.passed = report.passed;
    out.detail = std::to_string(report.violations.size()) + " violations, " +
                 std::to_string(report.notes.size()) + " skipped cells";
    if (!report.passed) out.detail += " (first: " + report.violations.front().inputs + ")";
    return out;
}

// 6. Welfare shape at c=0.6, F=0.16: InvertedU for lambda in {0, 0.5};
//    nonnegative right-derivative at k=0 for lambda = 1.
Outcome criterion6() {
    const CheckReport report = check_welfare_shape(calib(0.16));
    Outcome out;
    out.passed = report.passed;
    out.detail = std::to_string(report.violations.size()) + " violations";
    for (const Violation& v : report.violations) {
        out.detail += "\n         " + v.inputs;
    }
    return out;
}

// 7. Eventual decline: lambda=0 welfare at k=2 strictly below the k<=1.2 peak.
Outcome criterion7() {
    const BeliefDistribution dist;
    const ModelParams params = calib(0.16);
    const std::vector<double> ks = linspace(0.0, 1.2, 13);
    double peak = -kInf;
    for (double k : ks) peak = std::max(peak, aggregate_welfare(k, 0.0, params, dist).average);
    const double tail = aggregate_welfare(2.0, 0.0, params, dist).average;
    Outcome out;
    out.passed = tail < peak;
    out.detail = "W(2)=" + fmt(tail) + " vs peak " + fmt(peak);
    return out;
}

// 8. Side-by-side comparison table for the light calibration.
Outcome criterion8() {
    const BeliefDistribution dist;
    const ModelParams params = calib(0.06);
    const auto reference = reference_welfare_table();

    CsvWriter w;
    w.header({"k", "avg", "min", "max", "paper_avg", "paper_min", "paper_max", "delta"});
    std::vector<double> avgs;
    for (const ReferenceWelfareRow& row : reference) {
        const AggregateWelfare agg = aggregate_welfare(row.k, 1.0, params, dist);
        avgs.push_back(agg.average);
        w.field(row.k)
            .field(agg.average)
            .field(agg.min)
            .field(agg.max)
            .field(row.avg)
            .field(row.min)
            .field(row.max)
            .field(agg.average - row.avg);
        w.end_row();
    }
    std::ofstream file("welfare_table_comparison.csv", std::ios::binary);
    file << w.str();
    file.close();

    Outcome out;
    out.passed = true;
    for (double a : avgs) {
        if (!(a > 0.4 && a < 1.0)) out.passed = false;
    }
    if (!(avgs[1] >= avgs[0] - 1e-9 && avgs[2] >= avgs[1] - 1e-9)) out.passed = false;
    out.detail = "computed avgs:";
    for (double a : avgs) out.detail += " " + fmt(a);
    out.detail += " (report: welfare_table_comparison.csv)";
    return out;
}

// 9. Simulator soundness: frozen beliefs, per-step proxy bound, martingale,
//    byte-identical reruns.
Outcome criterion9() {
    Outcome out;
    out.passed = true;

    SimConfig cfg;
    cfg.params = calib(0.06);
    cfg.params.bonus = {BonusKind::Proportional, 0.4};
    cfg.horizon = 100;
    cfg.seed = 20240809;

    // (a) uninformative steps leave mu bit-identical
    for (std::uint64_t s = 0; s < 20; ++s) {
        SimConfig one = cfg;
        one.seed = cfg.seed + s;
        const CascadePath path = simulate_path(one);
        for (const AgentStep& step : path.steps) {
            if (!step.invested && step.mu_after != step.mu_before) {
                out.passed = false;
                out.detail += "belief moved on an uninformative step; ";
            }
        }
    }

    // (b)+(c) 10,000-path ensemble: bound and martingale
    const EnsembleStats stats = ensemble_statistics(cfg, 10000);
    if (stats.proxy_bound_violation_max > 1e-12) {
        out.passed = false;
        out.detail += "proxy bound violated by " + fmt(stats.proxy_bound_violation_max) + "; ";
    }
    if (stats.martingale_residual > 3.0 * stats.martingale_se) {
        out.passed = false;
        out.detail += "martingale residual " + fmt(stats.martingale_residual) + " > 3se " +
                      fmt(3.0 * stats.martingale_se) + "; ";
    }

    // (d) identical seeds reproduce identical CSV bytes
    std::vector<CascadePath> run1, run2;
    for (std::uint64_t i = 0; i < 50; ++i) {
        SimConfig c = cfg;
        c.seed = cfg.seed + i;
        run1.push_back(simulate_path(c));
        run2.push_back(simulate_path(c));
    }
    if (paths_to_csv(run1) != paths_to_csv(run2)) {
        out.passed = false;
        out.detail += "CSV bytes differ between identical-seed runs; ";
    }

    out.detail += "bound slack " + fmt(stats.proxy_bound_violation_max) + ", residual " +
                  fmt(stats.martingale_residual) + " (se " + fmt(stats.martingale_se) +
                  "), cascades " + fmt(stats.cascade_frequency);
    return out;
}

// 10. Solver vs dense-grid brute force on a seeded random (mu,k) sample.
Outcome criterion10() {
    const ModelParams params = calib(0.06);
    Outcome out;
    out.passed = true;
    double worst_rho = 0.0, worst_val = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double mu =
            0.05 + 0.9 * rng::uniform(20240809, 0, static_cast<std::uint64_t>(i), 0);
        const double k = 1.2 * rng::uniform(20240809, 1, static_cast<std::uint64_t>(i), 0);
        const EquilibriumPoint ep = solve_precision(mu, k, params);

        const ModelParams p = params.with_k(k);
        const Popularity pop = Popularity::proxy(mu);
        double best_v = value(mu, 0.0, p, pop).net;
        double best_rho = 0.0;
        const auto n = static_cast<std::size_t>(params.rho_max / 1e-4);
        for (std::size_t j = 1; j <= n; ++j) {
            const double rho = static_cast<double>(j) * 1e-4;
            const double v = value(mu, rho, p, pop).net;
            if (v > best_v) {
                best_v = v;
                best_rho = rho;
            }
        }
        worst_val = std::max(worst_val, std::abs(ep.value_at_optimum - best_v));
        if (ep.invests && best_rho > 0.0) {
            worst_rho = std::max(worst_rho, std::abs(ep.rho_star - best_rho));
        } else if (ep.invests != (best_rho > 0.0)) {
            out.passed = false;
            out.detail += "invest flag mismatch at mu=" + fmt(mu) + " k=" + fmt(k) + "; ";
        }
    }
    if (worst_rho >= 1e-3) out.passed = false;
    if (worst_val >= 1e-8) out.passed = false;
    out.detail += "max |drho*| " + fmt(worst_rho) + ", max |dV| " + fmt(worst_val);
    return out;
}

const char* kDescriptions[10] = {
    "threshold identities at the central belief",
    "analytic threshold sensitivity vs finite differences",
    "investment-region nesting across k",
    "center invariance of the net value of information",
    "precision dip near the central belief",
    "welfare curve shape and local slope",
    "eventual decline of downweighted welfare",
    "side-by-side welfare comparison table",
    "simulator soundness (beliefs, bound, martingale, determinism)",
    "solver equivalence with dense-grid brute force",
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::function<Outcome()>> criteria = {
        criterion1, criterion2, criterion3, criterion4, criterion5,
        criterion6, criterion7, criterion8, criterion9, criterion10,
    };

    std::vector<int> selected;
    if (argc < 2 || std::strcmp(argv[1], "all") == 0) {
        for (int i = 1; i <= 10; ++i) selected.push_back(i);
    } else {
        const int n = std::atoi(argv[1]);
        if (n < 1 || n > 10) {
            std::cerr << "usage: ccasc_acceptance [1-10 | all]\n";
            return 2;
        }
        selected.push_back(n);
    }

    bool all_ok = true;
    for (int n : selected) {
        Outcome out;
        try {
            out = criteria[static_cast<std::size_t>(n - 1)]();
        } catch (const std::exception& e) {
            out.passed = false;
            out.detail = std::string("exception: ") + e.what();
        }
        all_ok = all_ok && out.passed;
        std::cout << (out.passed ? "[PASS]" : "[FAIL]") << " criterion " << n << ": "
                  << kDescriptions[n - 1] << " -- " << out.detail << "\n";
    }
    return all_ok ? 0 : 1;
}
