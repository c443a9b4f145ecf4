#pragma once
// Endogenous information acquisition: the optimal precision
// rho*(mu,k) in argmax_{rho>=0} V(mu,rho,k), the net value of information
// Phi(mu,k) = max_rho{G - (c/2) rho^2} - G(mu,0,k), and investment regions.

#include <span>
#include <utility>
#include <vector>

#include "ccasc/payoff.hpp"

namespace ccasc {

struct EquilibriumPoint {
    double mu = 0.5;
    double k = 0.0;
    double rho_star = 0.0;
    double s_star = 0.0;  // +-inf when the (uninformed) action is forced
    bool invests = false;
    double value_at_optimum = 0.0;          // V at the chosen rho
    double net_value_of_information = 0.0;  // Phi(mu,k) >= 0
    bool hit_search_bound = false;          // argmax at rho_max after doublings
};

// Global maximizer of V over [0, rho_max]: dense grid (log-spaced plus
// linear, 2000 points) -> golden-section refinement -> parabolic polish;
// the interior optimum is compared against rho = 0 and ties within 1e-12
// resolve to no investment.  rho_max doubles up to 3 times if the argmax
// lands on the bound.  Popularity defaults to the belief proxy.
EquilibriumPoint solve_precision(double mu, double k, const ModelParams& params);
EquilibriumPoint solve_precision(double mu, double k, const ModelParams& params,
                                 const Popularity& pop);

// Phi(mu,k); invest decision is [Phi > F].
double net_value_of_information(double mu, double k, const ModelParams& params);

struct InvestmentRegion {
    std::vector<double> mu_grid;
    std::vector<char> invests;  // mask aligned with mu_grid
    std::vector<std::pair<double, double>> intervals;  // contiguous runs
};

InvestmentRegion investment_region(double k, const ModelParams& params,
                                   std::span<const double> mu_grid);

// Vectorized solve_precision, ordered by mu (deterministic under threading).
std::vector<EquilibriumPoint> precision_profile(double k, const ModelParams& params,
                                                std::span<const double> mu_grid);

}  // namespace ccasc
