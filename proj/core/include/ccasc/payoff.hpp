#pragma once
// Gross payoff G(mu, rho, k) = E[correct] + E[b(p_a)], the value function
// V = G - (c/2) rho^2 - F 1{rho > 0}, and the marginal value of precision
// Psi(rho) = dG/drho - c rho.

#include "ccasc/bonus.hpp"

namespace ccasc {

struct ModelParams {
    BonusSpec bonus;
    double cost_c = 0.6;    // quadratic precision-cost coefficient, > 0
    double cost_F = 0.06;   // fixed acquisition cost, >= 0
    double rho_max = 50.0;  // precision search bound, > 0
    PopularitySource popularity_mode = PopularitySource::ProxyFromBelief;
    int uninformed_tie_action = 1;  // action taken when mu == cutoff exactly

    void validate() const;  // throws std::invalid_argument

    ModelParams with_k(double k) const {
        ModelParams p = *this;
        p.bonus.k = k;
        return p;
    }
};

struct PayoffBreakdown {
    double correctness = 0.0;
    double bonus_expectation = 0.0;
    double gross = 0.0;           // correctness + bonus_expectation
    double cost_precision = 0.0;  // (c/2) rho^2
    double cost_fixed = 0.0;      // F 1{rho > 0}
    double net = 0.0;             // gross - costs
};

struct UninformedAction {
    int action = 1;
    double correctness = 0.0;
    double bonus = 0.0;
};

// Action taken on the public belief alone: a = 1 iff mu >= cutoff (raw,
// possibly unclamped; ties resolved by params.uninformed_tie_action).
UninformedAction uninformed_action(double mu, const ModelParams& params,
                                   const Popularity& pop);

// G(mu, rho, k) with costs zeroed.  rho = 0 delegates to uninformed_action.
PayoffBreakdown gross_payoff(double mu, double rho, const ModelParams& params,
                             const Popularity& pop);

// V(mu, rho, k) = G - (c/2) rho^2 - F 1{rho > 0}.
PayoffBreakdown value(double mu, double rho, const ModelParams& params,
                      const Popularity& pop);

// Psi(rho, k; mu) = dG/drho - c rho, with dG/drho from adaptive central
// differences (step max(1e-5, 1e-4 rho)) plus one Richardson refinement.
// Requires rho > 0.
double marginal_value_psi(double mu, double rho, const ModelParams& params,
                          const Popularity& pop);

}  // namespace ccasc
