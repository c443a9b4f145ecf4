#include "ccasc/precision.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ccasc/gaussian.hpp"
#include "ccasc/parallel.hpp"

namespace ccasc {

namespace {

constexpr int kGridPoints = 2000;
constexpr double kGoldenTol = 1e-9;
constexpr double kValueTie = 1e-12;
constexpr int kMaxBoundDoublings = 3;

std::vector<double> rho_candidates(double rho_max) {
    std::vector<double> grid;
    grid.reserve(kGridPoints);
    const int n_log = kGridPoints / 2;
    const int n_lin = kGridPoints - n_log;
    const double lo = std::min(1e-4, rho_max / 2.0);
    const double ratio = std::log(rho_max / lo);
    for (int i = 0; i < n_log; ++i) {
        grid.push_back(lo * std::exp(ratio * i / (n_log - 1)));
    }
    for (int i = 1; i <= n_lin; ++i) {
        grid.push_back(rho_max * i / n_lin);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

// Golden-section maximization followed by a parabolic vertex polish.  The
// polish keeps the located maximum stable (~1e-11) under constant shifts of
// the objective, which the center-invariance checks rely on.
template <typename F>
double refine_maximum(const F& f, double a, double b) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > kGoldenTol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    double x = 0.5 * (a + b);
    double fx = f(x);
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    if (x - h > 0.0) {
        const double fm = f(x - h);
        const double fp = f(x + h);
        const double denom = fm - 2.0 * fx + fp;
        if (denom < 0.0) {
            const double shift = 0.5 * h * (fm - fp) / denom;
            if (std::abs(shift) <= h) {
                const double xv = x + shift;
                const double fv = f(xv);
                if (fv >= fx) {
                    x = xv;
                    fx = fv;
                }
            }
        }
    }
    return x;
}

}  // namespace

EquilibriumPoint solve_precision(double mu, double k, const ModelParams& params) {
    return solve_precision(mu, k, params, Popularity::proxy(mu));
}

EquilibriumPoint solve_precision(double mu, double k, const ModelParams& params,
                                 const Popularity& pop) {
    params.validate();
    if (!(mu > 0.0 && mu < 1.0)) {
        throw std::domain_error("solve_precision: mu outside (0,1)");
    }
    const ModelParams p = params.with_k(k);
    const auto f = [&](double rho) {
        return gross_payoff(mu, rho, p, pop).gross - 0.5 * p.cost_c * rho * rho;
    };

    const double g0 = gross_payoff(mu, 0.0, p, pop).gross;

    double rho_max = p.rho_max;
    double rho_hat = 0.0;
    bool at_bound = false;
    for (int attempt = 0;; ++attempt) {
        const std::vector<double> grid = rho_candidates(rho_max);
        std::size_t best = 0;
        double best_val = -kInf;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double v = f(grid[i]);
            if (v > best_val) {
                best_val = v;
                best = i;
            }
        }
        at_bound = best + 1 == grid.size();
        if (at_bound && attempt < kMaxBoundDoublings) {
            rho_max *= 2.0;
            continue;
        }
        const double a = best > 0 ? grid[best - 1] : grid[0] * 0.5;
        const double b = at_bound ? grid[best] : grid[best + 1];
        rho_hat = refine_maximum(f, a, b);
        break;
    }

    EquilibriumPoint ep;
    ep.mu = mu;
    ep.k = k;
    ep.hit_search_bound = at_bound;

    const double interior = f(rho_hat);
    // Phi(mu,k): rho = 0 is feasible in the max, so Phi >= 0 by definition.
    ep.net_value_of_information = std::max(interior - g0, 0.0);
    ep.invests = ep.net_value_of_information > p.cost_F + kValueTie;

    const double cutoff = posterior_cutoff(p.bonus, pop).raw;
    if (ep.invests) {
        ep.rho_star = rho_hat;
        ep.value_at_optimum = interior - p.cost_F;
        ep.s_star = signal_threshold(mu, cutoff, rho_hat);
    } else {
        ep.rho_star = 0.0;
        ep.value_at_optimum = g0;
        // degenerate threshold of the forced/uninformed action
        const UninformedAction ua = uninformed_action(mu, p, pop);
        ep.s_star = ua.action == 1 ? -kInf : kInf;
    }
    return ep;
}

double net_value_of_information(double mu, double k, const ModelParams& params) {
    return solve_precision(mu, k, params).net_value_of_information;
}

InvestmentRegion investment_region(double k, const ModelParams& params,
                                   std::span<const double> mu_grid) {
    for (double mu : mu_grid) {
        if (!(mu > 0.0 && mu < 1.0)) {
            throw std::domain_error("investment_region: grid belief outside (0,1)");
        }
    }
    InvestmentRegion region;
    region.mu_grid.assign(mu_grid.begin(), mu_grid.end());
    region.invests.assign(mu_grid.size(), 0);
    parallel_for(mu_grid.size(), [&](std::size_t i) {
        region.invests[i] = solve_precision(mu_grid[i], k, params).invests ? 1 : 0;
    });
    for (std::size_t i = 0; i < region.invests.size();) {
        if (!region.invests[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < region.invests.size() && region.invests[j + 1]) ++j;
        region.intervals.emplace_back(region.mu_grid[i], region.mu_grid[j]);
        i = j + 1;
    }
    return region;
}

std::vector<EquilibriumPoint> precision_profile(double k, const ModelParams& params,
                                                std::span<const double> mu_grid) {
    std::vector<EquilibriumPoint> profile(mu_grid.size());
    parallel_for(mu_grid.size(), [&](std::size_t i) {
        profile[i] = solve_precision(mu_grid[i], k, params);
    });
    return profile;
}

}  // namespace ccasc
