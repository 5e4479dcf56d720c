#pragma once

#include <cstdint>
#include <vector>

#include "gsd/estimation.hpp"
#include "gsd/matrix.hpp"

namespace gsd {

/// One-dimensional estimation-risk study: per (psi, rho) probe and sample
/// size, RMSD of the grid-MLE estimates over replicated samples.
struct RmsdStudyConfig {
  int m = 5;
  std::vector<int> sizes{12, 24, 50, 200};
  int replicates = 1000;
  std::vector<double> psi_probes;
  std::vector<double> rho_probes;
  GridConfig grid{};
  std::uint64_t seed = 1;
};

struct RmsdCell {
  int n;
  double psi;
  double rho;
  double rmsd_psi;
  double rmsd_rho;
};

std::vector<RmsdCell> rmsd_study_1d(const RmsdStudyConfig& config);

/// Matrix-model risk study: one probed parameter held fixed, all other
/// psi_j ~ Uniform(1, M) and rho_i ~ Uniform(0, 1); reports the RMSD of the
/// probed parameter's estimate across replicates, per matrix size n = m.
struct MatrixRmsdConfig {
  int m = 5;
  std::vector<int> sizes{12, 24, 50, 200};
  int replicates = 100;
  bool probe_psi = true;  // probe one stimulus' psi; otherwise one rater's rho
  std::vector<double> probes;
  MatrixFitConfig fit{};
  std::uint64_t seed = 1;
};

struct MatrixRmsdCell {
  int n;
  double probe;
  double rmsd;
};

std::vector<MatrixRmsdCell> rmsd_study_matrix(const MatrixRmsdConfig& config);

}  // namespace gsd
