#include "gsd/rmsd.hpp"

#include <cmath>
#include <numeric>

#include "gsd/rng.hpp"

namespace gsd {

std::vector<RmsdCell> rmsd_study_1d(const RmsdStudyConfig& config) {
  if (config.psi_probes.empty() || config.rho_probes.empty())
    throw std::domain_error("rmsd_study_1d: empty probe grid");
  if (config.replicates < 1)
    throw std::domain_error("rmsd_study_1d: need at least one replicate");

  const GsdGrid grid(config.m, config.grid);
  std::vector<RmsdCell> cells;
  cells.reserve(config.psi_probes.size() * config.rho_probes.size() *
                config.sizes.size());
  std::uint64_t cell_id = 0;
  for (double psi : config.psi_probes) {
    for (double rho : config.rho_probes) {
      const GsdParams truth(psi, rho, config.m);
      const Pmf p = pmf(truth);
      std::vector<double> cdf(p.size());
      std::partial_sum(p.begin(), p.end(), cdf.begin());
      cdf.back() = 1.0;
      for (int n : config.sizes) {
        double sq_psi = 0.0;
        double sq_rho = 0.0;
        for (int r = 0; r < config.replicates; ++r) {
          Rng rng(derive_stream(config.seed,
                                cell_id * config.replicates + r));
          std::vector<std::int64_t> counts(config.m, 0);
          for (int i = 0; i < n; ++i) ++counts[rng.categorical(cdf)];
          const FitResult fit = grid.fit(CountSample(std::move(counts)));
          sq_psi += (fit.params.psi() - psi) * (fit.params.psi() - psi);
          sq_rho += (fit.params.rho() - rho) * (fit.params.rho() - rho);
        }
        cells.push_back({n, psi, rho, std::sqrt(sq_psi / config.replicates),
                         std::sqrt(sq_rho / config.replicates)});
        ++cell_id;
      }
    }
  }
  return cells;
}

std::vector<MatrixRmsdCell> rmsd_study_matrix(const MatrixRmsdConfig& config) {
  if (config.probes.empty())
    throw std::domain_error("rmsd_study_matrix: empty probe list");
  if (config.replicates < 1)
    throw std::domain_error("rmsd_study_matrix: need at least one replicate");

  std::vector<MatrixRmsdCell> cells;
  cells.reserve(config.probes.size() * config.sizes.size());
  std::uint64_t cell_id = 0;
  for (double probe : config.probes) {
    for (int n : config.sizes) {
      double sq = 0.0;
      for (int r = 0; r < config.replicates; ++r) {
        Rng rng(derive_stream(config.seed, cell_id * config.replicates + r));
        std::vector<double> psi(n);
        std::vector<double> rho(n);
        for (auto& v : psi) v = 1.0 + rng.uniform() * (config.m - 1);
        for (auto& v : rho) v = rng.uniform();
        if (config.probe_psi)
          psi[0] = probe;
        else
          rho[0] = probe;
        const RatingMatrix ratings = simulate_matrix(
            psi, rho, config.m,
            derive_stream(config.seed, 0x9e3779b9ULL + cell_id * config.replicates + r));
        const MatrixFit fit = fit_matrix(ratings, config.fit);
        const double err =
            config.probe_psi ? fit.psi[0] - probe : fit.rho[0] - probe;
        sq += err * err;
      }
      cells.push_back({n, probe, std::sqrt(sq / config.replicates)});
      ++cell_id;
    }
  }
  return cells;
}

}  // namespace gsd
