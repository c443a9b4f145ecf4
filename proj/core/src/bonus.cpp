#include "ccasc/bonus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccasc {

void BonusSpec::validate() const {
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw std::invalid_argument("BonusSpec: k must be finite and >= 0");
    }
}

Popularity Popularity::proxy(double mu) {
    if (!(mu >= 0.0 && mu <= 1.0)) {
        throw std::domain_error("Popularity::proxy: mu outside [0,1]");
    }
    return Popularity{mu, PopularitySource::ProxyFromBelief};
}

Popularity Popularity::from_counts(std::uint64_t ones, std::uint64_t total) {
    if (ones > total) {
        throw std::invalid_argument("Popularity::from_counts: ones > total");
    }
    if (total == 0) {
        // empty history: no modal action
        return Popularity{0.5, PopularitySource::EmpiricalCounts};
    }
    return Popularity{static_cast<double>(ones) / static_cast<double>(total),
                      PopularitySource::EmpiricalCounts};
}

void Popularity::validate() const {
    if (!(p1 >= 0.0 && p1 <= 1.0)) {
        throw std::domain_error("Popularity: p1 outside [0,1]");
    }
}

double bonus_value(const BonusSpec& spec, double chosen_popularity) {
    spec.validate();
    if (!(chosen_popularity >= 0.0 && chosen_popularity <= 1.0)) {
        throw std::domain_error("bonus_value: popularity outside [0,1]");
    }
    switch (spec.kind) {
        case BonusKind::FixedIndicator:
            // strict inequality: ties pay nothing
            return chosen_popularity < 0.5 ? spec.k : 0.0;
        case BonusKind::Proportional:
            return spec.k * (1.0 - chosen_popularity);
    }
    throw std::logic_error("bonus_value: unknown kind");
}

double bonus_differential(const BonusSpec& spec, const Popularity& pop) {
    pop.validate();
    return bonus_value(spec, pop.p1) - bonus_value(spec, pop.p0());
}

Cutoff posterior_cutoff(const BonusSpec& spec, const Popularity& pop) {
    const double delta = bonus_differential(spec, pop);
    Cutoff c;
    c.raw = (1.0 - delta) / 2.0;
    c.clamped = std::clamp(c.raw, 0.0, 1.0);
    return c;
}

double proxy_cutoff(double k, double mu) {
    if (!(mu > 0.0 && mu < 1.0)) {
        throw std::domain_error("proxy_cutoff: mu outside (0,1)");
    }
    if (!(k >= 0.0)) {
        throw std::domain_error("proxy_cutoff: k < 0");
    }
    return 0.5 + k * (mu - 0.5);
}

ProxyErrorBound proxy_error_bound(const BonusSpec& spec, double p1, double mu) {
    if (spec.kind != BonusKind::Proportional) {
        throw std::invalid_argument(
            "proxy_error_bound: bound is stated for the proportional bonus only");
    }
    Popularity pop{p1, PopularitySource::EmpiricalCounts};
    pop.validate();
    const double exact = posterior_cutoff(spec, pop).raw;
    const double proxy = proxy_cutoff(spec.k, mu);
    return ProxyErrorBound{spec.k * std::abs(p1 - mu), std::abs(exact - proxy)};
}

}  // namespace ccasc
