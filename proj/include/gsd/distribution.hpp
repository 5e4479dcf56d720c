#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gsd/common.hpp"

namespace gsd {

// Category probabilities p_1..p_M of a distribution on {1,...,M}.
using Pmf = std::vector<double>;

/// Parameters of the score distribution on {1,...,M}: psi is the expected
/// value, rho the confidence parameter (rho = 1 minimal variance, rho = 0
/// maximal). Immutable after construction; construction validates ranges.
class GsdParams {
 public:
  GsdParams(double psi, double rho, int m);

  double psi() const { return psi_; }
  double rho() const { return rho_; }
  int scale() const { return m_; }

  friend bool operator==(const GsdParams&, const GsdParams&) = default;

 private:
  double psi_;
  double rho_;
  int m_;
};

// Variance range attainable at a fixed mean, the shifted-binomial variance,
// and the confidence value c at which the distribution is shifted binomial.
struct VarianceEnvelope {
  double v_min;
  double v_max;
  double v_bin;
  double c;
};

VarianceEnvelope variance_envelope(double psi, int m);

// The regime threshold C(psi); equals VarianceEnvelope::c.
double regime_threshold(double psi, int m);

// Exact category probabilities. Dispatches to the reparameterised
// beta-binomial branch for rho < C(psi) and to the mixture branch
// (two-point/binomial) for rho >= C(psi).
Pmf pmf(const GsdParams& params);

// (mean, variance) in closed form: mean = psi,
// variance = rho*v_min + (1-rho)*v_max.
std::pair<double, double> moments(const GsdParams& params);

// P(U <= k) for k in {1,...,M}.
double cdf(const GsdParams& params, int k);

// Generalised inverse of the cdf: smallest k with cdf(k) >= u.
int quantile(const GsdParams& params, double u);

// n inverse-CDF draws; deterministic given the seed.
std::vector<int> sample(const GsdParams& params, int n, std::uint64_t seed);

enum class DispersionRegime { Underdispersed, Overdispersed };

// Representation of U - 1 as a sum of M-1 zero-one variables Z_i.
// Underdispersed (rho >= C): Z_i = D*X_i + (1-D)*Y_i with a shared mixture
// indicator D, deterministic/triangular X_i and iid Bernoulli Y_i.
// Overdispersed (0 < rho < C): Z_i conditionally iid Bernoulli(B) with
// B ~ Beta(alpha, beta), i.e. U - 1 is beta-binomial BB(M-1, alpha, beta).
struct LatentSpec {
  DispersionRegime regime;
  // mixture branch
  double mix_weight = 0.0;        // P(D = 1)
  std::vector<double> x_probs;    // P(X_i = 1), i = 1..M-1
  double y_prob = 0.0;            // shared P(Y_i = 1) = (psi-1)/(M-1)
  // beta-binomial branch
  double alpha = 0.0;
  double beta = 0.0;
};

LatentSpec latent_decomposition(const GsdParams& params);

// PMF induced by a latent decomposition, computed along an independent route
// (mixture arithmetic, or log-gamma beta-binomial). Matches pmf().
Pmf latent_pmf(const LatentSpec& spec, int m);

// Samples by simulating the latent construction itself; cross-check for the
// default inverse-CDF sampler.
std::vector<int> sample_latent(const GsdParams& params, int n,
                               std::uint64_t seed);

// Success probability P(Z_i = 1) as a function of a real index x in
// [1, M-1]; defined for the underdispersed regime (rho >= C) only.
double phi(const GsdParams& params, double x);

// Checks whether arbitrary per-index success probabilities describe a valid
// response distribution with mean psi and confidence rho: values in [0,1],
// sum psi-1, sum of squares psi-1-(1-rho)*v_max-rho*v_min (all within 1e-9).
// The scale is inferred as phi_values.size() + 1.
bool validate_general_phi(std::span<const double> phi_values, double psi,
                          double rho);

namespace detail {

// Shifted-binomial probabilities: Binomial(M-1, (psi-1)/(M-1)) at k-1.
Pmf shifted_binomial_pmf(double psi, int m);

// Beta-binomial BB(m-1, alpha, beta) at k-1 via log-gamma, k = 1..m.
Pmf beta_binomial_pmf(double alpha, double beta, int m);

// Row of binomial coefficients C(n, 0..n) as doubles.
std::vector<double> binomial_row(int n);

}  // namespace detail
}  // namespace gsd
