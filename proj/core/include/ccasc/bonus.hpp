#pragma once
// Contrarian bonus functions, bonus differentials, and posterior cutoffs.
//
// An agent who chooses action a receives a bonus b(p_a) where p_a is the
// popularity (predecessor share) of the chosen action.  Two parametric
// families are supported:
//   FixedIndicator:  b(p) = k * 1{p < 1/2}   (zero in ties)
//   Proportional:    b(p) = k * (1 - p)
// Both are weakly decreasing in p, so the induced posterior cutoff
// c = (1 - [b(p1) - b(p0)]) / 2 moves away from 1/2 against the majority.

#include <cstdint>

namespace ccasc {

enum class BonusKind { FixedIndicator, Proportional };

struct BonusSpec {
    BonusKind kind = BonusKind::Proportional;
    double k = 0.0;  // contrarian intensity, utility units, k >= 0 (k > 1 allowed)

    void validate() const;  // throws std::invalid_argument
};

enum class PopularitySource { ProxyFromBelief, EmpiricalCounts };

// Fraction of predecessors who chose action 1.  An empty history has no
// modal action and is represented as p1 = 1/2.
struct Popularity {
    double p1 = 0.5;
    PopularitySource source = PopularitySource::ProxyFromBelief;

    double p0() const { return 1.0 - p1; }

    static Popularity proxy(double mu);  // p1 := mu, mu in [0,1]
    static Popularity from_counts(std::uint64_t ones, std::uint64_t total);

    void validate() const;
};

// b(p; k) evaluated at the popularity of the chosen action.
// Throws std::domain_error for p outside [0,1].
double bonus_value(const BonusSpec& spec, double chosen_popularity);

// Delta(h) = b(p1) - b(p0).  Proportional form satisfies Delta = k(1 - 2 p1).
double bonus_differential(const BonusSpec& spec, const Popularity& pop);

struct Cutoff {
    double raw = 0.5;      // (1 - Delta)/2; can leave [0,1] when k > 1
    double clamped = 0.5;  // max(0, min(1, raw)), for decision reporting
};

// Posterior threshold: choose a = 1 iff posterior >= cutoff.
Cutoff posterior_cutoff(const BonusSpec& spec, const Popularity& pop);

// Closed-form proxy cutoff c~(mu,k) = 1/2 + k(mu - 1/2) for the proportional
// bonus with the popularity proxy p1 ~ mu.  Unclamped: callers interpret
// c~ >= 1 as "never choose 1 uninformed" and c~ <= 0 symmetrically.
// Throws std::domain_error for mu outside (0,1) or k < 0.
double proxy_cutoff(double k, double mu);

struct ProxyErrorBound {
    double bound;      // k * |p1 - mu|
    double exact_gap;  // |posterior_cutoff - proxy_cutoff|
};

// Gap between the exact popularity cutoff and the belief-proxy cutoff.
// Contract: exact_gap <= bound + 1e-12 (tight for the proportional form).
// Only defined for the proportional bonus; FixedIndicator is rejected.
ProxyErrorBound proxy_error_bound(const BonusSpec& spec, double p1, double mu);

}  // namespace ccasc
