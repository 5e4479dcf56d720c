#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gsd/estimation.hpp"

namespace gsd {

struct RatingEntry {
  int rater;     // 0-based
  int stimulus;  // 0-based
  int score;     // in {1,...,M}
};

/// Sparse-capable matrix of responses U_ij; rater i carries a confidence
/// parameter rho_i, stimulus j a quality parameter psi_j.
class RatingMatrix {
 public:
  RatingMatrix(int raters, int stimuli, int m_scale,
               std::vector<RatingEntry> entries);

  int raters() const { return raters_; }
  int stimuli() const { return stimuli_; }
  int scale() const { return m_; }
  const std::vector<RatingEntry>& entries() const { return entries_; }

  // (stimulus-grouped and rater-grouped views, built on construction)
  const std::vector<std::vector<std::pair<int, int>>>& by_stimulus() const {
    return by_stimulus_;  // per stimulus: (rater, score)
  }
  const std::vector<std::vector<std::pair<int, int>>>& by_rater() const {
    return by_rater_;  // per rater: (stimulus, score)
  }

 private:
  int raters_;
  int stimuli_;
  int m_;
  std::vector<RatingEntry> entries_;
  std::vector<std::vector<std::pair<int, int>>> by_stimulus_;
  std::vector<std::vector<std::pair<int, int>>> by_rater_;
};

// Full matrix with U_ij ~ GSD(psi[j], rho[i]) drawn independently in
// row-major order; deterministic given the seed.
RatingMatrix simulate_matrix(std::span<const double> psi,
                             std::span<const double> rho, int m_scale,
                             std::uint64_t seed);

struct MatrixFit {
  std::vector<double> psi;  // per stimulus
  std::vector<double> rho;  // per rater
  double log_likelihood;
  int sweeps;
  bool converged;
};

struct MatrixFitConfig {
  double tol = 1e-8;    // stop when a full sweep gains less than this
  int max_sweeps = 500;
};

double matrix_log_likelihood(const RatingMatrix& ratings,
                             std::span<const double> psi,
                             std::span<const double> rho);

// Joint MLE by block-coordinate ascent: all psi_j given rho, then all rho_i
// given psi, each by a projected gradient step with backtracking. The joint
// log-likelihood never decreases. Initialisation: psi_j = column mean,
// rho_i = mean of the per-entry moments-implied rho.
MatrixFit fit_matrix(const RatingMatrix& ratings,
                     const MatrixFitConfig& config = {});

}  // namespace gsd
