#include "ccasc/payoff.hpp"

#include <cmath>
#include <stdexcept>

#include "ccasc/gaussian.hpp"

namespace ccasc {

void ModelParams::validate() const {
    bonus.validate();
    if (!(cost_c > 0.0) || !std::isfinite(cost_c)) {
        throw std::invalid_argument("ModelParams: cost_c must be > 0");
    }
    if (!(cost_F >= 0.0) || !std::isfinite(cost_F)) {
        throw std::invalid_argument("ModelParams: cost_F must be >= 0");
    }
    if (!(rho_max > 0.0) || !std::isfinite(rho_max)) {
        throw std::invalid_argument("ModelParams: rho_max must be > 0");
    }
    if (uninformed_tie_action != 0 && uninformed_tie_action != 1) {
        throw std::invalid_argument("ModelParams: tie action must be 0 or 1");
    }
}

UninformedAction uninformed_action(double mu, const ModelParams& params,
                                   const Popularity& pop) {
    const double cutoff = posterior_cutoff(params.bonus, pop).raw;
    UninformedAction ua;
    // raw cutoff handles the forced cases: cutoff >= 1 keeps mu < cutoff
    // (action 0), cutoff <= 0 keeps mu > cutoff (action 1).
    if (mu > cutoff) {
        ua.action = 1;
    } else if (mu < cutoff) {
        ua.action = 0;
    } else {
        ua.action = params.uninformed_tie_action;
    }
    ua.correctness = ua.action == 1 ? mu : 1.0 - mu;
    const double chosen_pop = ua.action == 1 ? pop.p1 : pop.p0();
    ua.bonus = bonus_value(params.bonus, chosen_pop);
    return ua;
}

PayoffBreakdown gross_payoff(double mu, double rho, const ModelParams& params,
                             const Popularity& pop) {
    if (!(rho >= 0.0)) {
        throw std::domain_error("gross_payoff: rho must be >= 0");
    }
    PayoffBreakdown pb;
    if (rho == 0.0) {
        const UninformedAction ua = uninformed_action(mu, params, pop);
        pb.correctness = ua.correctness;
        pb.bonus_expectation = ua.bonus;
        pb.gross = pb.correctness + pb.bonus_expectation;
        pb.net = pb.gross;
        return pb;
    }
    const double cutoff = posterior_cutoff(params.bonus, pop).raw;
    const double s = signal_threshold(mu, cutoff, rho);
    const ActionProbabilities probs = action_probabilities(mu, s, rho);
    pb.correctness =
        mu * probs.p1_given_theta1 + (1.0 - mu) * probs.p0_given_theta0();
    const double p1 = probs.p1_unconditional;
    const double p0 = 1.0 - p1;
    switch (params.bonus.kind) {
        case BonusKind::Proportional:
            // weights are the chosen action's unpopularity (proxy: pop.p1 = mu)
            pb.bonus_expectation = params.bonus.k * ((1.0 - pop.p1) * p1 + pop.p1 * p0);
            break;
        case BonusKind::FixedIndicator:
            if (pop.p1 > 0.5) {
                pb.bonus_expectation = params.bonus.k * p0;
            } else if (pop.p1 < 0.5) {
                pb.bonus_expectation = params.bonus.k * p1;
            } else {
                pb.bonus_expectation = 0.0;  // no modal action, no bonus
            }
            break;
    }
    pb.gross = pb.correctness + pb.bonus_expectation;
    pb.net = pb.gross;
    return pb;
}

PayoffBreakdown value(double mu, double rho, const ModelParams& params,
                      const Popularity& pop) {
    PayoffBreakdown pb = gross_payoff(mu, rho, params, pop);
    pb.cost_precision = 0.5 * params.cost_c * rho * rho;
    pb.cost_fixed = rho > 0.0 ? params.cost_F : 0.0;
    pb.net = pb.gross - pb.cost_precision - pb.cost_fixed;
    return pb;
}

double marginal_value_psi(double mu, double rho, const ModelParams& params,
                          const Popularity& pop) {
    if (!(rho > 0.0)) {
        throw std::domain_error("marginal_value_psi: rho must be > 0");
    }
    const auto g = [&](double r) { return gross_payoff(mu, r, params, pop).gross; };
    double h = std::max(1e-5, 1e-4 * rho);
    if (rho - h <= 0.0) h = rho / 2.0;
    const double d_h = (g(rho + h) - g(rho - h)) / (2.0 * h);
    const double d_h2 = (g(rho + h / 2.0) - g(rho - h / 2.0)) / h;
    const double d = (4.0 * d_h2 - d_h) / 3.0;  // Richardson
    return d - params.cost_c * rho;
}

}  // namespace ccasc
