#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gsd/estimation.hpp"

namespace gsd {

enum class CompareVariant { Unmodified, Corrected };
enum class CompareVerdict { GsdBetter, EpmfBetter, NoDifference };

struct CompareResult {
  double p_hat_gsd;  // fraction of replicates where the GSD likelihood wins
  double p_hat_e;    // fraction where the empirical PMF wins
  double diff;       // p_hat_gsd - p_hat_e
  double ci_low;
  double ci_high;
  int mc;
  int n_small;
  CompareVerdict verdict;
  int ties = 0;            // replicates with equal likelihoods
  int undefined_ties = 0;  // both likelihoods -infinity (unmodified variant)
};

// Draws mc subsamples of size n_small from the empirical PMF of the large
// sample; per subsample fits the GSD (plain grid MLE for Unmodified,
// p_max-constrained for Corrected) and forms the subsample EPMF (plain or
// add-0.5); compares large-sample log-likelihoods and reports the win-rate
// difference with its 95% interval.
CompareResult compare_models(const CountSample& large_sample, int n_small,
                             int mc, CompareVariant variant, std::uint64_t seed,
                             const GridConfig& grid = {});

// Shared-grid variant for batch callers.
CompareResult compare_models(const CountSample& large_sample, int n_small,
                             int mc, CompareVariant variant, std::uint64_t seed,
                             const GsdGrid& grid);

struct DiffHistogram {
  int n_small;
  std::vector<double> bin_edges;      // size bins + 1
  std::vector<int> total;             // all results per bin
  std::vector<int> insignificant;     // results with verdict NoDifference
};

struct CompareBatch {
  // Results in (sample-major, n_small-minor) order.
  std::vector<CompareResult> results;
  std::vector<DiffHistogram> histograms;  // one per n_small value
};

CompareBatch compare_batch(std::span<const CountSample> large_samples,
                           std::span<const int> n_small_values, int mc,
                           CompareVariant variant, std::uint64_t seed,
                           const GridConfig& grid = {}, int histogram_bins = 40);

namespace detail {

// Win-count bookkeeping -> estimator, interval, verdict.
CompareResult summarize_w_counts(int gsd_wins, int e_wins, int mc, int n_small,
                                 int undefined_ties);

}  // namespace detail
}  // namespace gsd
