#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "gsd/estimation.hpp"
#include "gsd/probit.hpp"

namespace gsd {

enum class GofModel { Gsd, OrderedProbit };

struct GofResult {
  double t_statistic;
  double p_value;
  int mc;
  std::variant<FitResult, ProbitFitResult> fitted;
  Pmf fitted_pmf;
};

// Likelihood-ratio statistic T = sum n_k log(n_k / (n p_k)) with the
// convention 0 log(0/x) = 0; +infinity when an observed category has zero
// fitted probability.
double g_statistic(const CountSample& sample, const Pmf& fitted);

struct GofConfig {
  GridConfig grid{};
  // Fit the GSD with the empty-cell-corrected (p_max-capped) grid MLE.
  bool constrained = true;
  ProbitGridConfig probit_grid{};
};

// Parametric bootstrap of the G-test: fit, draw mc samples of size n from
// the fitted PMF, refit each with the same estimator, and report
// p = #(T_r >= T) / mc. Deterministic given the seed.
GofResult bootstrap_g_test(const CountSample& sample, GofModel model, int mc,
                           std::uint64_t seed, const GofConfig& config = {});

// Variants over prebuilt grids, for callers running many tests.
GofResult bootstrap_g_test(const CountSample& sample, const GsdGrid& grid,
                           int mc, std::uint64_t seed, bool constrained = true);
GofResult bootstrap_g_test(const CountSample& sample, const ProbitGrid& grid,
                           int mc, std::uint64_t seed);

enum class PpBound {
  // 1-alpha binomial quantile of the ecdf height at each grid point under
  // p-values uniform on [0,1].
  PointwiseBinomial,
  // Dvoretzky-Kiefer-Wolfowitz band x + sqrt(log(1/alpha) / (2N)).
  Dkw,
};

struct PpPlotPoint {
  double x;
  double ecdf;
  double bound;
};

// Empirical CDF of a p-value set on an equispaced [0,1] grid, together with
// the null upper bound curve.
std::vector<PpPlotPoint> pp_plot_data(std::span<const double> p_values,
                                      double alpha,
                                      PpBound bound = PpBound::PointwiseBinomial,
                                      int grid_points = 101);

}  // namespace gsd
