#pragma once
// Per-belief and aggregate welfare under an evaluator weight lambda.
// Agents always act on the full bonus (lambda = 1 objective); lambda scales
// only the bonus term in the evaluation:
//   W_lambda(mu,k) = correctness + lambda * E[b(p_a)] - (c/2) rho*^2 - F 1{rho*>0}.

#include <span>
#include <vector>

#include "ccasc/precision.hpp"

namespace ccasc {

struct WelfareRecord {
    double mu = 0.5;
    double k = 0.0;
    double lambda = 1.0;
    double correctness = 0.0;
    double bonus_expectation = 0.0;  // unweighted E[b(p_a)]
    double precision_cost = 0.0;
    double fixed_cost = 0.0;
    double welfare = 0.0;  // correctness + lambda*bonus - costs
    double rho_star = 0.0;
};

enum class BeliefDistKind { UniformGrid };

struct BeliefDistribution {
    BeliefDistKind kind = BeliefDistKind::UniformGrid;
    double lo = 0.02;
    double hi = 0.98;
    int n_points = 97;

    void validate() const;
    std::vector<double> points() const;  // equally spaced, equal weights
};

WelfareRecord equilibrium_welfare(double mu, double k, double lambda,
                                  const ModelParams& params);

// Per-period planner solves the same program as the agent; kept as a
// distinct entry point.  Equals equilibrium_welfare at lambda = 1.
WelfareRecord planner_welfare(double mu, double k, const ModelParams& params);

struct AggregateWelfare {
    double average = 0.0;
    double min = 0.0;
    double max = 0.0;
};

AggregateWelfare aggregate_welfare(double k, double lambda, const ModelParams& params,
                                   const BeliefDistribution& dist);

struct WelfareCurvePoint {
    double k = 0.0;
    AggregateWelfare aggregate;
};

std::vector<WelfareCurvePoint> welfare_curve(std::span<const double> k_grid,
                                             double lambda, const ModelParams& params,
                                             const BeliefDistribution& dist);

enum class CurveShape { Increasing, Decreasing, InvertedU, Other };

// InvertedU iff the consecutive differences form +...+ -...- (each comparison
// decided at tolerance tol).  Throws std::invalid_argument for < 3 points.
CurveShape detect_shape(std::span<const double> values, double tol = 1e-9);

const char* to_string(CurveShape shape);

struct DerivativeEstimate {
    double estimate = 0.0;          // Richardson-combined forward difference
    double step_consistency = 0.0;  // |D(h/2) - D(h)| diagnostic
};

// Right derivative of W_lambda in k at k = 0 (steps 1e-3 and 5e-4).
DerivativeEstimate local_k_derivative(double mu, double lambda,
                                      const ModelParams& params);
DerivativeEstimate local_k_derivative_aggregate(double lambda, const ModelParams& params,
                                                const BeliefDistribution& dist);

struct ReferenceWelfareRow {
    double k;
    double avg;
    double min;
    double max;
};

// Fixed reference values for the light-cost (c=0.6, F=0.06, lambda=1)
// comparison table.  The welfare report prints them beside computed values
// with deltas; they are comparison data, never assertion targets (see the
// README's output-schema notes).
std::span<const ReferenceWelfareRow> reference_welfare_table();

}  // namespace ccasc
