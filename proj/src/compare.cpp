#include "gsd/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "gsd/rng.hpp"

namespace gsd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Log-likelihood of `probs` for the large-sample counts, restricted to
// occupied categories; -infinity when an occupied category has zero
// probability.
double large_sample_loglik(const CountSample& large, const Pmf& probs) {
  double acc = 0.0;
  for (int k = 0; k < large.scale(); ++k) {
    const auto n_k = large.counts()[k];
    if (n_k == 0) continue;
    if (probs[k] <= 0.0) return -kInf;
    acc += static_cast<double>(n_k) * std::log(probs[k]);
  }
  return acc;
}

}  // namespace

namespace detail {

CompareResult summarize_w_counts(int gsd_wins, int e_wins, int mc, int n_small,
                                 int undefined_ties) {
  CompareResult r;
  r.mc = mc;
  r.n_small = n_small;
  r.p_hat_gsd = static_cast<double>(gsd_wins) / mc;
  r.p_hat_e = static_cast<double>(e_wins) / mc;
  r.diff = r.p_hat_gsd - r.p_hat_e;
  const double half =
      1.96 * std::sqrt((r.p_hat_gsd + r.p_hat_e - r.diff * r.diff) / mc);
  r.ci_low = r.diff - half;
  r.ci_high = r.diff + half;
  r.verdict = r.ci_low > 0.0   ? CompareVerdict::GsdBetter
              : r.ci_high < 0.0 ? CompareVerdict::EpmfBetter
                                : CompareVerdict::NoDifference;
  r.ties = mc - gsd_wins - e_wins;
  r.undefined_ties = undefined_ties;
  return r;
}

}  // namespace detail

CompareResult compare_models(const CountSample& large_sample, int n_small,
                             int mc, CompareVariant variant, std::uint64_t seed,
                             const GsdGrid& grid) {
  if (n_small < 1)
    throw std::domain_error("compare_models: n_small must be >= 1");
  if (large_sample.total() <= n_small)
    throw std::domain_error(
        "compare_models: the large sample must exceed n_small");
  if (mc < 1) throw std::domain_error("compare_models: mc must be >= 1");

  const Pmf large_epmf = epmf(large_sample);
  std::vector<double> cdf(large_epmf.size());
  std::partial_sum(large_epmf.begin(), large_epmf.end(), cdf.begin());
  cdf.back() = 1.0;

  int gsd_wins = 0;
  int e_wins = 0;
  int undefined = 0;
  // (L_model, L_epmf) is a deterministic function of the subsample counts.
  std::map<std::vector<std::int64_t>, std::pair<double, double>> cache;
  for (int r = 0; r < mc; ++r) {
    Rng rng(derive_stream(seed, static_cast<std::uint64_t>(r)));
    std::vector<std::int64_t> counts(large_epmf.size(), 0);
    for (int i = 0; i < n_small; ++i) ++counts[rng.categorical(cdf)];

    auto [it, fresh] = cache.try_emplace(counts, 0.0, 0.0);
    if (fresh) {
      CountSample sub{std::move(counts)};
      const FitResult fit = variant == CompareVariant::Corrected
                                ? mle_constrained(sub, grid)
                                : grid.fit(sub);
      const Pmf v_hat = variant == CompareVariant::Corrected
                            ? modified_epmf(sub)
                            : epmf(sub);
      it->second = {large_sample_loglik(large_sample, pmf(fit.params)),
                    large_sample_loglik(large_sample, v_hat)};
    }
    const auto [lm, le] = it->second;
    if (lm == -kInf && le == -kInf) {
      // Both PMFs miss an occupied category; the ratio carries no sign.
      ++undefined;
    } else if (lm > le) {
      ++gsd_wins;
    } else if (le > lm) {
      ++e_wins;
    }
  }
  return detail::summarize_w_counts(gsd_wins, e_wins, mc, n_small, undefined);
}

CompareResult compare_models(const CountSample& large_sample, int n_small,
                             int mc, CompareVariant variant, std::uint64_t seed,
                             const GridConfig& grid) {
  return compare_models(large_sample, n_small, mc, variant, seed,
                        GsdGrid(large_sample.scale(), grid));
}

CompareBatch compare_batch(std::span<const CountSample> large_samples,
                           std::span<const int> n_small_values, int mc,
                           CompareVariant variant, std::uint64_t seed,
                           const GridConfig& grid, int histogram_bins) {
  if (large_samples.empty() || n_small_values.empty())
    throw std::domain_error("compare_batch: empty input lists");
  if (histogram_bins < 1)
    throw std::domain_error("compare_batch: need at least one histogram bin");

  const GsdGrid shared(large_samples.front().scale(), grid);
  CompareBatch batch;
  batch.results.reserve(large_samples.size() * n_small_values.size());
  for (std::size_t s = 0; s < large_samples.size(); ++s) {
    for (std::size_t t = 0; t < n_small_values.size(); ++t) {
      const auto stream = derive_stream(
          seed, s * n_small_values.size() + t);
      batch.results.push_back(compare_models(large_samples[s],
                                             n_small_values[t], mc, variant,
                                             stream, shared));
    }
  }

  for (std::size_t t = 0; t < n_small_values.size(); ++t) {
    DiffHistogram h;
    h.n_small = n_small_values[t];
    h.bin_edges.resize(histogram_bins + 1);
    for (int b = 0; b <= histogram_bins; ++b)
      h.bin_edges[b] = -1.0 + 2.0 * b / histogram_bins;
    h.total.assign(histogram_bins, 0);
    h.insignificant.assign(histogram_bins, 0);
    for (std::size_t s = 0; s < large_samples.size(); ++s) {
      const auto& r = batch.results[s * n_small_values.size() + t];
      int bin = static_cast<int>((r.diff + 1.0) / 2.0 * histogram_bins);
      bin = std::clamp(bin, 0, histogram_bins - 1);
      ++h.total[bin];
      if (r.verdict == CompareVerdict::NoDifference) ++h.insignificant[bin];
    }
    batch.histograms.push_back(std::move(h));
  }
  return batch;
}

}  // namespace gsd
