#include "ccasc/gaussian.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "ccasc/bonus.hpp"
#include "ccasc/rng.hpp"

namespace ccasc {

namespace {
std::atomic<std::uint64_t> g_clip_events{0};
}

std::uint64_t clip_event_count() { return g_clip_events.load(std::memory_order_relaxed); }

double clip_unit(double p, double eps, bool* clipped) {
    if (clipped) *clipped = false;
    if (p < eps) {
        if (clipped) *clipped = true;
        g_clip_events.fetch_add(1, std::memory_order_relaxed);
        return eps;
    }
    if (p > 1.0 - eps) {
        if (clipped) *clipped = true;
        g_clip_events.fetch_add(1, std::memory_order_relaxed);
        return 1.0 - eps;
    }
    return p;
}

double logit(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("logit: argument outside (0,1)");
    }
    return std::log(p / (1.0 - p));
}

double inverse_logit(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double normal_cdf(double x) {
    if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
    // 1/sqrt(2)
    return 0.5 * std::erfc(-x * 0.70710678118654752440);
}

double normal_pdf(double x) {
    if (std::isinf(x)) return 0.0;
    return 0.39894228040143267794 * std::exp(-0.5 * x * x);
}

// Rational approximation to Phi^{-1} (Wichura's PPND16), |rel err| ~ 1e-15.
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("normal_quantile: argument outside (0,1)");
    }
    const double q = p - 0.5;
    double r;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -x : x;
}

double signal_threshold(double mu, double cutoff, double rho) {
    if (!(mu > 0.0 && mu < 1.0)) {
        throw std::domain_error("signal_threshold: mu outside (0,1)");
    }
    if (!(rho > 0.0)) {
        throw std::domain_error("signal_threshold: rho must be > 0");
    }
    if (cutoff >= 1.0) return kInf;   // action 1 unreachable
    if (cutoff <= 0.0) return -kInf;  // action 1 forced
    const double c = clip_unit(cutoff);
    const double m = clip_unit(mu);
    return 0.5 + (logit(c) - logit(m)) / rho;
}

double threshold_k_sensitivity(double mu, double k, double rho) {
    if (!(rho > 0.0)) {
        throw std::domain_error("threshold_k_sensitivity: rho must be > 0");
    }
    const double c = proxy_cutoff(k, mu);
    if (!(c > 0.0 && c < 1.0)) {
        throw std::domain_error("threshold_k_sensitivity: proxy cutoff outside (0,1)");
    }
    return (mu - 0.5) / (rho * c * (1.0 - c));
}

ActionProbabilities action_probabilities(double mu, double s_star, double rho) {
    if (!(mu > 0.0 && mu < 1.0)) {
        throw std::domain_error("action_probabilities: mu outside (0,1)");
    }
    ActionProbabilities probs;
    if (std::isinf(s_star)) {
        const double p = s_star > 0.0 ? 0.0 : 1.0;
        probs.p1_given_theta1 = p;
        probs.p1_given_theta0 = p;
        probs.p1_unconditional = p;
        return probs;
    }
    if (!(rho > 0.0)) {
        throw std::domain_error("action_probabilities: rho must be > 0 for finite s*");
    }
    const double sq = std::sqrt(rho);
    probs.p1_given_theta1 = 1.0 - normal_cdf((s_star - 1.0) * sq);
    probs.p1_given_theta0 = 1.0 - normal_cdf(s_star * sq);
    probs.p1_unconditional =
        mu * probs.p1_given_theta1 + (1.0 - mu) * probs.p1_given_theta0;
    return probs;
}

double bayes_update(double mu, int action, const ActionProbabilities& probs) {
    if (!(mu > 0.0 && mu < 1.0)) {
        throw std::domain_error("bayes_update: mu outside (0,1)");
    }
    if (action != 0 && action != 1) {
        throw std::invalid_argument("bayes_update: action must be 0 or 1");
    }
    const double l1 = action == 1 ? probs.p1_given_theta1 : probs.p0_given_theta1();
    const double l0 = action == 1 ? probs.p1_given_theta0 : probs.p0_given_theta0();
    if (l1 == 0.0 && l0 == 0.0) {
        throw std::logic_error("bayes_update: observed action has probability zero");
    }
    if (l1 == l0) {
        return mu;  // uninformative action: belief unchanged, exactly
    }
    const double denom = mu * l1 + (1.0 - mu) * l0;
    if (!(denom > 0.0)) {
        throw std::logic_error("bayes_update: observed action has probability zero");
    }
    return clip_unit(mu * l1 / denom);
}

namespace rng {

double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t step,
              std::uint64_t draw) {
    return normal_quantile(uniform(seed, stream, step, draw));
}

}  // namespace rng

}  // namespace ccasc
