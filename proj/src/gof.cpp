#include "gsd/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "gsd/rng.hpp"

namespace gsd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> prefix_cdf(const Pmf& p) {
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  cdf.back() = 1.0;
  return cdf;
}

CountSample draw_counts(std::span<const double> cdf, int n, Rng& rng) {
  std::vector<std::int64_t> counts(cdf.size(), 0);
  for (int i = 0; i < n; ++i) ++counts[rng.categorical(cdf)];
  return CountSample(std::move(counts));
}

// log P(Bin(n, x) = i) summed incrementally would underflow for extreme x;
// evaluate each term in log space instead.
double log_binom_pmf(int n, int i, double x, double lchoose) {
  if (x <= 0.0) return i == 0 ? 0.0 : -kInf;
  if (x >= 1.0) return i == n ? 0.0 : -kInf;
  return lchoose + i * std::log(x) + (n - i) * std::log1p(-x);
}

}  // namespace

double g_statistic(const CountSample& sample, const Pmf& fitted) {
  if (static_cast<int>(fitted.size()) != sample.scale())
    throw std::domain_error("g_statistic: scale mismatch");
  const double n = static_cast<double>(sample.total());
  double t = 0.0;
  for (int k = 0; k < sample.scale(); ++k) {
    const auto n_k = sample.counts()[k];
    if (n_k == 0) continue;
    if (fitted[k] <= 0.0) return kInf;
    t += static_cast<double>(n_k) *
         std::log(static_cast<double>(n_k) / (n * fitted[k]));
  }
  return t;
}

namespace {

template <typename FitFn>
GofResult bootstrap_impl(const CountSample& sample, int mc, std::uint64_t seed,
                         FitFn&& fit) {
  if (mc < 1) throw std::domain_error("bootstrap_g_test: mc must be >= 1");
  const int n = static_cast<int>(sample.total());

  GofResult result;
  result.mc = mc;
  auto [fitted_pmf, fitted] = fit(sample);
  result.fitted_pmf = fitted_pmf;
  result.fitted = std::move(fitted);
  result.t_statistic = g_statistic(sample, result.fitted_pmf);

  const auto cdf = prefix_cdf(result.fitted_pmf);
  // Identical count vectors refit identically; memoise T_r by counts.
  std::map<std::vector<std::int64_t>, double> cache;
  int at_least = 0;
  for (int r = 0; r < mc; ++r) {
    Rng rng(derive_stream(seed, static_cast<std::uint64_t>(r)));
    CountSample boot = draw_counts(cdf, n, rng);
    auto [it, fresh] = cache.try_emplace(boot.counts(), 0.0);
    if (fresh) {
      auto [boot_pmf, boot_fit] = fit(boot);
      it->second = g_statistic(boot, boot_pmf);
    }
    if (it->second >= result.t_statistic) ++at_least;
  }
  result.p_value = static_cast<double>(at_least) / mc;
  return result;
}

}  // namespace

GofResult bootstrap_g_test(const CountSample& sample, const GsdGrid& grid,
                           int mc, std::uint64_t seed, bool constrained) {
  const auto fit = [&](const CountSample& s)
      -> std::pair<Pmf, std::variant<FitResult, ProbitFitResult>> {
    FitResult f = constrained ? mle_constrained(s, grid) : grid.fit(s);
    return {pmf(f.params), f};
  };
  return bootstrap_impl(sample, mc, seed, fit);
}

GofResult bootstrap_g_test(const CountSample& sample, const ProbitGrid& grid,
                           int mc, std::uint64_t seed) {
  const auto fit = [&](const CountSample& s)
      -> std::pair<Pmf, std::variant<FitResult, ProbitFitResult>> {
    ProbitFitResult f = grid.fit(s);
    return {probit_pmf(f.params), f};
  };
  return bootstrap_impl(sample, mc, seed, fit);
}

GofResult bootstrap_g_test(const CountSample& sample, GofModel model, int mc,
                           std::uint64_t seed, const GofConfig& config) {
  if (model == GofModel::Gsd) {
    GsdGrid grid(sample.scale(), config.grid);
    return bootstrap_g_test(sample, grid, mc, seed, config.constrained);
  }
  ProbitGrid grid(sample.scale(), config.probit_grid);
  return bootstrap_g_test(sample, grid, mc, seed);
}

std::vector<PpPlotPoint> pp_plot_data(std::span<const double> p_values,
                                      double alpha, PpBound bound,
                                      int grid_points) {
  if (p_values.empty())
    throw std::domain_error("pp_plot_data: empty p-value list");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("pp_plot_data: alpha must lie in (0, 1)");
  if (grid_points < 2)
    throw std::domain_error("pp_plot_data: need at least 2 grid points");

  std::vector<double> sorted(p_values.begin(), p_values.end());
  std::sort(sorted.begin(), sorted.end());
  const int n = static_cast<int>(sorted.size());

  std::vector<double> lchoose(n + 1);
  for (int i = 0; i <= n; ++i)
    lchoose[i] = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) -
                 std::lgamma(n - i + 1.0);

  const double dkw_slack = std::sqrt(std::log(1.0 / alpha) / (2.0 * n));
  std::vector<PpPlotPoint> out(grid_points);
  for (int g = 0; g < grid_points; ++g) {
    const double x =
        g == grid_points - 1 ? 1.0 : static_cast<double>(g) / (grid_points - 1);
    const auto above = std::upper_bound(sorted.begin(), sorted.end(), x);
    const double ecdf =
        static_cast<double>(above - sorted.begin()) / static_cast<double>(n);
    double b;
    if (bound == PpBound::Dkw) {
      b = std::min(1.0, x + dkw_slack);
    } else {
      // Smallest b/n with P(Bin(n, x) <= b) >= 1 - alpha.
      double cum = 0.0;
      int q = n;
      for (int i = 0; i <= n; ++i) {
        cum += std::exp(log_binom_pmf(n, i, x, lchoose[i]));
        if (cum >= 1.0 - alpha) {
          q = i;
          break;
        }
      }
      b = static_cast<double>(q) / static_cast<double>(n);
    }
    out[g] = {x, ecdf, b};
  }
  return out;
}

}  // namespace gsd
