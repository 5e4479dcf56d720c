#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gsd/distribution.hpp"

namespace gsd {

/// Response-category counts (n_1,...,n_M) of one sample.
class CountSample {
 public:
  explicit CountSample(std::vector<std::int64_t> counts);
  static CountSample from_scores(std::span<const int> scores, int m);

  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t total() const { return total_; }
  int scale() const { return static_cast<int>(counts_.size()); }

  double mean() const;
  // Biased (divide-by-n) sample variance.
  double variance() const;

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t total_;
};

enum class FitMethod { Moments, Grid, Gradient, ConstrainedGrid };

struct FitResult {
  GsdParams params;
  double log_likelihood;
  FitMethod method;
  // grid methods
  double psi_step = 0.0;
  double rho_step = 0.0;
  // gradient method
  int iterations = 0;
  bool converged = true;
};

struct GridConfig {
  double psi_step = 0.01;
  double rho_step = 0.01;
};

// Method-of-moments estimate; rho-hat clamped to [0, 1], and samples with
// mean on a scale edge report rho-hat = 1 by convention.
GsdParams moments_estimate(const CountSample& sample);

// Sum over categories of n_k * log p_k; -infinity when an observed category
// has zero probability.
double log_likelihood(const GsdParams& params, const CountSample& sample);

// Per-category derivatives of log p_k. Throws non_differentiable_error at
// integer psi, edge psi, or rho exactly at the regime threshold.
struct LogPmfGradient {
  Pmf probs;
  std::vector<double> dpsi;  // d log p_k / d psi
  std::vector<double> drho;  // d log p_k / d rho
};
LogPmfGradient log_pmf_gradient(const GsdParams& params);

// Analytic gradient of the log-likelihood; same differentiability domain.
std::pair<double, double> log_likelihood_gradient(const GsdParams& params,
                                                  const CountSample& sample);

/// Precomputed log-PMF table over the (psi, rho) grid for one scale size.
/// Grid fits are dot products against this table; argmax ties are broken by
/// smallest psi, then smallest rho, independent of evaluation order.
class GsdGrid {
 public:
  GsdGrid(int m, GridConfig config = {});

  int scale() const { return m_; }
  const GridConfig& config() const { return config_; }
  std::size_t size() const { return pmax_.size(); }
  GsdParams params_at(std::size_t index) const;
  double p_max_at(std::size_t index) const { return pmax_[index]; }

  // Unconstrained grid MLE.
  FitResult fit(const CountSample& sample) const;
  // Grid MLE restricted to points whose two most probable categories sum to
  // at most pmax_cap.
  FitResult fit_constrained(const CountSample& sample, double pmax_cap) const;

 private:
  FitResult fit_impl(const CountSample& sample,
                     std::optional<double> pmax_cap) const;

  int m_;
  GridConfig config_;
  std::vector<double> psi_values_;
  std::vector<double> rho_values_;
  std::vector<double> log_pmf_;  // point-major, m_ entries per point
  std::vector<double> pmax_;
};

FitResult mle_grid(const CountSample& sample, const GridConfig& config = {});

// Projected gradient ascent over [1,M]x[0,1] starting from the moments
// estimate (or an explicit init). Non-convergence within the iteration cap
// is reported in the result, not thrown.
FitResult mle_gradient(const CountSample& sample,
                       std::optional<GsdParams> init = std::nullopt);

// Largest total probability of any two distinct categories.
double p_max(const GsdParams& params);

// Grid MLE subject to p_max <= 1 - 1/n (empty-cell correction); requires
// n >= 2.
FitResult mle_constrained(const CountSample& sample,
                          const GridConfig& config = {});
FitResult mle_constrained(const CountSample& sample, const GsdGrid& grid);

Pmf epmf(const CountSample& sample);
// Add-0.5 smoothing: (n_k + 0.5) / (n + M/2); entries strictly inside (0,1).
Pmf modified_epmf(const CountSample& sample);

namespace detail {

// Log-likelihood via the branch-wise closed forms (products for rho < C,
// mixture logs for rho >= C). Equals the direct log-PMF summation; kept as
// an independent route for verification.
double closed_form_log_likelihood(const GsdParams& params,
                                  const CountSample& sample);

// (log p_k, d/dpsi log p_k, d/drho log p_k) for a single category.
struct PointGradient {
  double log_p;
  double dpsi;
  double drho;
};
PointGradient log_pmf_point_gradient(double psi, double rho, int m, int k);

}  // namespace detail
}  // namespace gsd
