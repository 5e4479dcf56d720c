#pragma once

#include <utility>
#include <vector>

#include "gsd/estimation.hpp"

namespace gsd {

/// Ordered probit with thresholds fixed at half-integers: a latent
/// N(mu, sigma^2) response discretised to {1,...,M} and censored at the
/// scale ends.
class ProbitParams {
 public:
  ProbitParams(double mu, double sigma, int m);

  double mu() const { return mu_; }
  double sigma() const { return sigma_; }
  int scale() const { return m_; }

 private:
  double mu_;
  double sigma_;
  int m_;
};

// Standard normal CDF via the complementary error function.
double normal_cdf(double z);

Pmf probit_pmf(const ProbitParams& params);

// (mean, variance) of the discretised variable, by summation over the PMF.
std::pair<double, double> probit_induced_moments(const ProbitParams& params);

struct ProbitGridConfig {
  double mu_min = 0.0;
  double mu_max = -1.0;  // < mu_min means "use M + 1"
  double mu_step = 0.01;
  double sigma_min = 0.01;
  double sigma_max = 5.0;
  double sigma_step = 0.01;
};

struct ProbitFitResult {
  ProbitParams params;
  double log_likelihood;
};

/// Precomputed log-PMF table over the (mu, sigma) box. Ties are broken by
/// smallest mu, then smallest sigma.
class ProbitGrid {
 public:
  ProbitGrid(int m, ProbitGridConfig config = {});

  int scale() const { return m_; }
  std::size_t size() const { return mu_values_.size() * sigma_values_.size(); }
  ProbitParams params_at(std::size_t index) const;

  ProbitFitResult fit(const CountSample& sample) const;

 private:
  int m_;
  std::vector<double> mu_values_;
  std::vector<double> sigma_values_;
  std::vector<double> log_pmf_;
};

ProbitFitResult probit_mle_grid(const CountSample& sample,
                                ProbitGridConfig config = {});

double probit_log_likelihood(const ProbitParams& params,
                             const CountSample& sample);

}  // namespace gsd
