#include "ccasc/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "ccasc/parallel.hpp"

namespace ccasc {

void BeliefDistribution::validate() const {
    if (!(lo > 0.0 && hi < 1.0 && lo < hi)) {
        throw std::invalid_argument("BeliefDistribution: need 0 < lo < hi < 1");
    }
    if (n_points < 1) {
        throw std::invalid_argument("BeliefDistribution: n_points must be >= 1");
    }
}

std::vector<double> BeliefDistribution::points() const {
    validate();
    std::vector<double> pts(static_cast<std::size_t>(n_points));
    if (n_points == 1) {
        pts[0] = 0.5 * (lo + hi);
        return pts;
    }
    for (int i = 0; i < n_points; ++i) {
        pts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n_points - 1);
    }
    return pts;
}

WelfareRecord equilibrium_welfare(double mu, double k, double lambda,
                                  const ModelParams& params) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("equilibrium_welfare: lambda outside [0,1]");
    }
    // rho* always reflects the full bonus; lambda only reweights the record.
    const EquilibriumPoint ep = solve_precision(mu, k, params);
    const PayoffBreakdown pb =
        value(mu, ep.rho_star, params.with_k(k), Popularity::proxy(mu));
    WelfareRecord rec;
    rec.mu = mu;
    rec.k = k;
    rec.lambda = lambda;
    rec.correctness = pb.correctness;
    rec.bonus_expectation = pb.bonus_expectation;
    rec.precision_cost = pb.cost_precision;
    rec.fixed_cost = pb.cost_fixed;
    rec.rho_star = ep.rho_star;
    rec.welfare = rec.correctness + lambda * rec.bonus_expectation -
                  rec.precision_cost - rec.fixed_cost;
    return rec;
}

WelfareRecord planner_welfare(double mu, double k, const ModelParams& params) {
    // The per-period planner controls the same rho choice the agent makes,
    // so the program coincides with equilibrium at lambda = 1.
    return equilibrium_welfare(mu, k, 1.0, params);
}

AggregateWelfare aggregate_welfare(double k, double lambda, const ModelParams& params,
                                   const BeliefDistribution& dist) {
    const std::vector<double> grid = dist.points();
    std::vector<double> w(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        w[i] = equilibrium_welfare(grid[i], k, lambda, params).welfare;
    });
    AggregateWelfare agg;
    agg.min = w[0];
    agg.max = w[0];
    double sum = 0.0;
    for (double v : w) {  // fixed summation order over the sorted grid
        sum += v;
        agg.min = std::min(agg.min, v);
        agg.max = std::max(agg.max, v);
    }
    agg.average = sum / static_cast<double>(w.size());
    return agg;
}

std::vector<WelfareCurvePoint> welfare_curve(std::span<const double> k_grid,
                                             double lambda, const ModelParams& params,
                                             const BeliefDistribution& dist) {
    if (!std::is_sorted(k_grid.begin(), k_grid.end())) {
        throw std::invalid_argument("welfare_curve: k_grid must be sorted");
    }
    std::vector<WelfareCurvePoint> curve(k_grid.size());
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        curve[i].k = k_grid[i];
        curve[i].aggregate = aggregate_welfare(k_grid[i], lambda, params, dist);
    }
    return curve;
}

CurveShape detect_shape(std::span<const double> values, double tol) {
    if (values.size() < 3) {
        throw std::invalid_argument("detect_shape: need at least 3 points");
    }
    std::size_t n_up = 0, n_down = 0, n_flat = 0;
    bool seen_down = false;
    bool ordered = true;  // all up-diffs strictly before all down-diffs
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const double d = values[i + 1] - values[i];
        if (d > tol) {
            ++n_up;
            if (seen_down) ordered = false;
        } else if (d < -tol) {
            ++n_down;
            seen_down = true;
        } else {
            ++n_flat;
        }
    }
    if (n_flat == 0 && n_down == 0) return CurveShape::Increasing;
    if (n_flat == 0 && n_up == 0) return CurveShape::Decreasing;
    if (n_flat == 0 && n_up > 0 && n_down > 0 && ordered) return CurveShape::InvertedU;
    return CurveShape::Other;
}

const char* to_string(CurveShape shape) {
    switch (shape) {
        case CurveShape::Increasing: return "Increasing";
        case CurveShape::Decreasing: return "Decreasing";
        case CurveShape::InvertedU: return "InvertedU";
        case CurveShape::Other: return "Other";
    }
    return "Other";
}

namespace {

DerivativeEstimate right_derivative(const std::function<double(double)>& w) {
    const double h1 = 1e-3;
    const double h2 = 5e-4;
    const double w0 = w(0.0);
    const double d1 = (w(h1) - w0) / h1;
    const double d2 = (w(h2) - w0) / h2;
    DerivativeEstimate est;
    est.estimate = 2.0 * d2 - d1;  // cancels the O(h) term
    est.step_consistency = std::abs(d2 - d1);
    return est;
}

}  // namespace

DerivativeEstimate local_k_derivative(double mu, double lambda,
                                      const ModelParams& params) {
    return right_derivative([&](double k) {
        return equilibrium_welfare(mu, k, lambda, params).welfare;
    });
}

DerivativeEstimate local_k_derivative_aggregate(double lambda, const ModelParams& params,
                                                const BeliefDistribution& dist) {
    return right_derivative([&](double k) {
        return aggregate_welfare(k, lambda, params, dist).average;
    });
}

std::span<const ReferenceWelfareRow> reference_welfare_table() {
    static const ReferenceWelfareRow rows[] = {
        {0.0, 0.6569, 0.5348, 0.7416},
        {0.2, 0.6792, 0.5519, 0.7643},
        {0.4, 0.6877, 0.5620, 0.7727},
        {0.6, 0.6830, 0.5580, 0.7687},
        {0.8, 0.6681, 0.5430, 0.7545},
    };
    return rows;
}

}  // namespace ccasc
