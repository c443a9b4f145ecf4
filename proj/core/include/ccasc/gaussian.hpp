#pragma once
// Gaussian signal technology: s | theta ~ N(theta, 1/rho) with state means
// 0 and 1, precision rho = 1/sigma^2, log-likelihood ratio l(s) = rho(s - 1/2).
// Provides logit/cdf primitives, the signal-threshold rule implementing a
// posterior cutoff, action probabilities, and Bayesian belief updates.

#include <cstdint>
#include <limits>

namespace ccasc {

// Probabilities entering logit are clipped into [eps, 1-eps].
inline constexpr double kBeliefEps = 1e-9;

// Clip p into [eps, 1-eps]; sets *clipped when clipping occurred.
// Every clip event also bumps a process-wide counter so harness runs can
// report clipping instead of letting it pass silently.
double clip_unit(double p, double eps = kBeliefEps, bool* clipped = nullptr);

std::uint64_t clip_event_count();

// ln(p / (1-p)).  Throws std::domain_error at p <= 0 or p >= 1; apply the
// clip policy first when boundary values are expected.
double logit(double p);
double inverse_logit(double x);

// Standard normal cdf/pdf.  Phi via the complementary error function,
// absolute error well under 1e-10.  +-inf map to 1/0.
double normal_cdf(double x);
double normal_pdf(double x);

// Inverse standard normal cdf (rational approximation, ~1e-15 relative).
// Throws std::domain_error outside (0,1).
double normal_quantile(double p);

// Signal threshold implementing "a = 1 iff posterior >= cutoff":
//   s* = 1/2 + (logit(cutoff) - logit(mu)) / rho.
// cutoff is the raw (possibly unclamped) posterior cutoff; cutoff >= 1 yields
// +inf (action 1 unreachable), cutoff <= 0 yields -inf.  Requires rho > 0.
double signal_threshold(double mu, double cutoff, double rho);

// d s*/d k for the proportional bonus with popularity proxy:
//   (1/rho) * (mu - 1/2) / (c~ (1 - c~)),  c~ = proxy_cutoff(k, mu).
// Throws std::domain_error when c~ is outside (0,1) or rho <= 0.
double threshold_k_sensitivity(double mu, double k, double rho);

struct ActionProbabilities {
    double p1_given_theta1 = 0.0;  // 1 - Phi((s* - 1) sqrt(rho))
    double p1_given_theta0 = 0.0;  // 1 - Phi(s* sqrt(rho))
    double p1_unconditional = 0.0; // mu-weighted mixture

    double p0_given_theta1() const { return 1.0 - p1_given_theta1; }
    double p0_given_theta0() const { return 1.0 - p1_given_theta0; }
    double p0_unconditional() const { return 1.0 - p1_unconditional; }
};

// Probabilities of action 1 induced by the threshold rule at (mu, s*, rho).
// s* = +-inf encodes a forced action.  MLRP: p1|theta1 >= p1|theta0.
ActionProbabilities action_probabilities(double mu, double s_star, double rho);

// Posterior after observing `action` under the given equilibrium likelihoods.
// Uninformative actions (equal likelihoods) return mu exactly.  Observing an
// action of probability zero under both states is an invariant violation.
double bayes_update(double mu, int action, const ActionProbabilities& probs);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace ccasc
