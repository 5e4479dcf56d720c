#include "gsd/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gsd/rng.hpp"

namespace gsd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_pmf_at(double psi, double rho, int m, int score) {
  const Pmf p = pmf(GsdParams(psi, rho, m));
  return p[score - 1] > 0.0 ? std::log(p[score - 1]) : -kInf;
}

// Keeps gradient evaluations away from kinks and edges.
double nudge_interior(double x, double lo, double hi) {
  const double nearest = std::round(x);
  double y = x;
  if (std::abs(x - nearest) < 1e-9) y = nearest + 1e-9;
  return std::clamp(y, lo + 1e-9, hi - 1e-9);
}

}  // namespace

RatingMatrix::RatingMatrix(int raters, int stimuli, int m_scale,
                           std::vector<RatingEntry> entries)
    : raters_(raters),
      stimuli_(stimuli),
      m_(m_scale),
      entries_(std::move(entries)) {
  if (raters < 1 || stimuli < 1)
    throw std::domain_error("RatingMatrix: need at least one rater and stimulus");
  if (m_scale < 3)
    throw std::domain_error("RatingMatrix: scale size must be >= 3");
  by_stimulus_.resize(stimuli_);
  by_rater_.resize(raters_);
  for (const auto& e : entries_) {
    if (e.rater < 0 || e.rater >= raters_ || e.stimulus < 0 ||
        e.stimulus >= stimuli_)
      throw std::domain_error("RatingMatrix: entry index out of range");
    if (e.score < 1 || e.score > m_)
      throw std::domain_error("RatingMatrix: score outside {1,...,M}");
    by_stimulus_[e.stimulus].emplace_back(e.rater, e.score);
    by_rater_[e.rater].emplace_back(e.stimulus, e.score);
  }
  for (int j = 0; j < stimuli_; ++j)
    if (by_stimulus_[j].empty())
      throw std::domain_error("RatingMatrix: stimulus without any rating");
  for (int i = 0; i < raters_; ++i)
    if (by_rater_[i].empty())
      throw std::domain_error("RatingMatrix: rater without any rating");
}

RatingMatrix simulate_matrix(std::span<const double> psi,
                             std::span<const double> rho, int m_scale,
                             std::uint64_t seed) {
  const int n = static_cast<int>(rho.size());
  const int m = static_cast<int>(psi.size());
  std::vector<RatingEntry> entries;
  entries.reserve(static_cast<std::size_t>(n) * m);
  Rng rng(seed);
  std::vector<double> cdf;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const Pmf p = pmf(GsdParams(psi[j], rho[i], m_scale));
      cdf.assign(p.begin(), p.end());
      std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
      cdf.back() = 1.0;
      entries.push_back({i, j, rng.categorical(cdf) + 1});
    }
  }
  return RatingMatrix(n, m, m_scale, std::move(entries));
}

double matrix_log_likelihood(const RatingMatrix& ratings,
                             std::span<const double> psi,
                             std::span<const double> rho) {
  if (static_cast<int>(psi.size()) != ratings.stimuli() ||
      static_cast<int>(rho.size()) != ratings.raters())
    throw std::domain_error("matrix_log_likelihood: parameter length mismatch");
  double acc = 0.0;
  for (const auto& e : ratings.entries()) {
    acc += log_pmf_at(psi[e.stimulus], rho[e.rater], ratings.scale(), e.score);
    if (acc == -kInf) return -kInf;
  }
  return acc;
}

namespace {

// One-dimensional projected gradient ascent on a coordinate; `value` is the
// current parameter, `ll`/`grad` evaluate the restricted objective and its
// derivative. Returns the achieved objective value.
template <typename LlFn, typename GradFn>
double ascend_coordinate(double& value, double lo, double hi, LlFn&& ll,
                         GradFn&& grad, int max_steps) {
  double cur = ll(value);
  for (int step = 0; step < max_steps; ++step) {
    const double g = grad(nudge_interior(value, lo, hi));
    double t = 0.1;
    bool accepted = false;
    double cand = value;
    double cand_ll = cur;
    while (t >= 1e-16) {
      cand = std::clamp(value + t * g, lo, hi);
      cand_ll = ll(cand);
      if (cand_ll > cur) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    const double moved = std::abs(cand - value);
    const double gained = cand_ll - cur;
    value = cand;
    cur = cand_ll;
    if (moved < 1e-10 || gained < 1e-12) break;
  }
  return cur;
}

}  // namespace

MatrixFit fit_matrix(const RatingMatrix& ratings, const MatrixFitConfig& config) {
  const int m = ratings.scale();
  const int n_raters = ratings.raters();
  const int n_stimuli = ratings.stimuli();

  // Initialise psi_j at the column mean.
  std::vector<double> psi(n_stimuli);
  for (int j = 0; j < n_stimuli; ++j) {
    double acc = 0.0;
    for (const auto& [i, score] : ratings.by_stimulus()[j]) acc += score;
    psi[j] = acc / static_cast<double>(ratings.by_stimulus()[j].size());
  }
  // Initialise rho_i from the moments identity applied entrywise: one
  // squared deviation from the column mean stands in for the variance.
  std::vector<double> rho(n_raters);
  for (int i = 0; i < n_raters; ++i) {
    double acc = 0.0;
    for (const auto& [j, score] : ratings.by_rater()[i]) {
      const auto env = variance_envelope(psi[j], m);
      double r = 1.0;
      if (env.v_max > env.v_min) {
        const double dev = score - psi[j];
        r = std::clamp((env.v_max - dev * dev) / (env.v_max - env.v_min), 0.0,
                       1.0);
      }
      acc += r;
    }
    // Keep the start strictly off rho = 0 so the first sweep has a finite
    // joint likelihood even for raters deviating by the full scale.
    rho[i] = std::clamp(
        acc / static_cast<double>(ratings.by_rater()[i].size()), 0.01, 1.0);
  }

  const auto column_ll = [&](int j, double psi_j) {
    double acc = 0.0;
    for (const auto& [i, score] : ratings.by_stimulus()[j]) {
      acc += log_pmf_at(psi_j, rho[i], m, score);
      if (acc == -kInf) return -kInf;
    }
    return acc;
  };
  const auto column_grad = [&](int j, double psi_j) {
    double acc = 0.0;
    for (const auto& [i, score] : ratings.by_stimulus()[j]) {
      // rho = 0 exactly sits on the degenerate end of the product branch.
      const double rho_eval = std::max(rho[i], 1e-9);
      acc += detail::log_pmf_point_gradient(psi_j, rho_eval, m, score).dpsi;
    }
    return acc;
  };
  const auto row_ll = [&](int i, double rho_i) {
    double acc = 0.0;
    for (const auto& [j, score] : ratings.by_rater()[i]) {
      acc += log_pmf_at(psi[j], rho_i, m, score);
      if (acc == -kInf) return -kInf;
    }
    return acc;
  };
  const auto row_grad = [&](int i, double rho_i) {
    double acc = 0.0;
    for (const auto& [j, score] : ratings.by_rater()[i]) {
      const double psi_eval = nudge_interior(psi[j], 1.0, m);
      acc += detail::log_pmf_point_gradient(psi_eval, rho_i, m, score).drho;
    }
    return acc;
  };

  double joint = matrix_log_likelihood(ratings, psi, rho);
  int sweep = 0;
  bool converged = false;
  constexpr int kInnerSteps = 4;
  for (; sweep < config.max_sweeps; ++sweep) {
    for (int j = 0; j < n_stimuli; ++j) {
      ascend_coordinate(
          psi[j], 1.0, static_cast<double>(m),
          [&](double v) { return column_ll(j, v); },
          [&](double v) { return column_grad(j, v); }, kInnerSteps);
    }
    for (int i = 0; i < n_raters; ++i) {
      ascend_coordinate(
          rho[i], 0.0, 1.0, [&](double v) { return row_ll(i, v); },
          [&](double v) { return row_grad(i, v); }, kInnerSteps);
    }
    const double updated = matrix_log_likelihood(ratings, psi, rho);
    if (updated < joint - 1e-9)
      throw std::logic_error("fit_matrix: joint log-likelihood decreased");
    const double gain = updated - joint;
    joint = updated;
    if (gain < config.tol) {
      converged = true;
      ++sweep;
      break;
    }
  }
  return {std::move(psi), std::move(rho), joint, sweep, converged};
}

}  // namespace gsd
