#include "gsd/probit.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gsd {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ProbitParams::ProbitParams(double mu, double sigma, int m)
    : mu_(mu), sigma_(sigma), m_(m) {
  if (m < 3) throw std::domain_error("ProbitParams: scale size must be >= 3");
  if (!(sigma > 0.0)) throw std::domain_error("ProbitParams: sigma must be > 0");
  if (!std::isfinite(mu)) throw std::domain_error("ProbitParams: mu must be finite");
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

Pmf probit_pmf(const ProbitParams& params) {
  const int m = params.scale();
  const double mu = params.mu();
  const double sigma = params.sigma();
  Pmf p(m);
  // Censored tails absorb everything below 1.5 and above M - 0.5.
  double lower = normal_cdf((1.5 - mu) / sigma);
  p[0] = lower;
  for (int s = 2; s <= m - 1; ++s) {
    const double upper = normal_cdf((s + 0.5 - mu) / sigma);
    p[s - 1] = upper - lower;
    lower = upper;
  }
  p[m - 1] = 0.5 * std::erfc((m - 0.5 - mu) / sigma * M_SQRT1_2);
  return p;
}

std::pair<double, double> probit_induced_moments(const ProbitParams& params) {
  const Pmf p = probit_pmf(params);
  double mean = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) mean += (k + 1.0) * p[k];
  double var = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double d = k + 1.0 - mean;
    var += d * d * p[k];
  }
  return {mean, var};
}

double probit_log_likelihood(const ProbitParams& params,
                             const CountSample& sample) {
  if (sample.scale() != params.scale())
    throw std::domain_error("probit_log_likelihood: scale mismatch");
  const Pmf p = probit_pmf(params);
  double acc = 0.0;
  for (int k = 0; k < sample.scale(); ++k) {
    const auto n_k = sample.counts()[k];
    if (n_k == 0) continue;
    if (p[k] <= 0.0) return -kInf;
    acc += static_cast<double>(n_k) * std::log(p[k]);
  }
  return acc;
}

ProbitGrid::ProbitGrid(int m, ProbitGridConfig config) : m_(m) {
  if (m < 3) throw std::domain_error("ProbitGrid: scale size must be >= 3");
  if (config.mu_max < config.mu_min) config.mu_max = m + 1.0;
  if (!(config.mu_step > 0.0) || !(config.sigma_step > 0.0) ||
      !(config.sigma_min > 0.0) || config.sigma_max < config.sigma_min)
    throw std::domain_error("ProbitGrid: invalid grid box");

  const auto axis = [](double lo, double hi, double step) {
    const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
    std::vector<double> values(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
      values[i] = lo + static_cast<double>(i) * step;
    values[n - 1] = hi;
    return values;
  };
  mu_values_ = axis(config.mu_min, config.mu_max, config.mu_step);
  sigma_values_ = axis(config.sigma_min, config.sigma_max, config.sigma_step);

  log_pmf_.resize(size() * static_cast<std::size_t>(m));
  std::size_t idx = 0;
  for (double mu : mu_values_) {
    for (double sigma : sigma_values_) {
      const Pmf p = probit_pmf(ProbitParams(mu, sigma, m));
      for (int k = 0; k < m; ++k)
        log_pmf_[idx * m + k] = p[k] > 0.0 ? std::log(p[k]) : -kInf;
      ++idx;
    }
  }
}

ProbitParams ProbitGrid::params_at(std::size_t index) const {
  const std::size_t nsigma = sigma_values_.size();
  return ProbitParams(mu_values_[index / nsigma], sigma_values_[index % nsigma],
                      m_);
}

ProbitFitResult ProbitGrid::fit(const CountSample& sample) const {
  if (sample.scale() != m_)
    throw std::domain_error("ProbitGrid: sample scale does not match the grid");
  int nk = 0;
  std::array<int, 64> cat{};
  std::array<double, 64> cnt{};
  std::vector<int> cat_big;
  std::vector<double> cnt_big;
  const bool small = m_ <= 64;
  for (int k = 0; k < m_; ++k) {
    if (sample.counts()[k] == 0) continue;
    if (small) {
      cat[nk] = k;
      cnt[nk] = static_cast<double>(sample.counts()[k]);
    } else {
      cat_big.push_back(k);
      cnt_big.push_back(static_cast<double>(sample.counts()[k]));
    }
    ++nk;
  }
  const int* cats = small ? cat.data() : cat_big.data();
  const double* cnts = small ? cnt.data() : cnt_big.data();

  double best_ll = -kInf;
  std::size_t best = size();
  for (std::size_t g = 0; g < size(); ++g) {
    const double* row = log_pmf_.data() + g * m_;
    double ll = 0.0;
    for (int t = 0; t < nk; ++t) ll += cnts[t] * row[cats[t]];
    if (ll > best_ll) {
      best_ll = ll;
      best = g;
    }
  }
  if (best == size())
    throw std::logic_error("ProbitGrid: no grid point has finite likelihood");
  return {params_at(best), best_ll};
}

ProbitFitResult probit_mle_grid(const CountSample& sample,
                                ProbitGridConfig config) {
  return ProbitGrid(sample.scale(), config).fit(sample);
}

}  // namespace gsd
