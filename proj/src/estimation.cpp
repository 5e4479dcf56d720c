#include "gsd/estimation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace gsd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

CountSample::CountSample(std::vector<std::int64_t> counts)
    : counts_(std::move(counts)), total_(0) {
  if (counts_.size() < 3)
    throw std::domain_error("CountSample: need at least 3 categories");
  for (auto c : counts_) {
    if (c < 0) throw std::domain_error("CountSample: negative count");
    total_ += c;
  }
  if (total_ < 1) throw std::domain_error("CountSample: empty sample");
}

CountSample CountSample::from_scores(std::span<const int> scores, int m) {
  if (m < 3) throw std::domain_error("CountSample: scale size must be >= 3");
  std::vector<std::int64_t> counts(m, 0);
  for (int s : scores) {
    if (s < 1 || s > m)
      throw std::domain_error("CountSample: score outside {1,...,M}");
    ++counts[s - 1];
  }
  return CountSample(std::move(counts));
}

double CountSample::mean() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < counts_.size(); ++k)
    acc += static_cast<double>(counts_[k]) * static_cast<double>(k + 1);
  return acc / static_cast<double>(total_);
}

double CountSample::variance() const {
  const double mu = mean();
  double acc = 0.0;
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    const double d = static_cast<double>(k + 1) - mu;
    acc += static_cast<double>(counts_[k]) * d * d;
  }
  return acc / static_cast<double>(total_);
}

GsdParams moments_estimate(const CountSample& sample) {
  const int m = sample.scale();
  const double psi_hat = sample.mean();
  const double snapped = detail::snap_to_integer(psi_hat);
  if (snapped == 1.0 || snapped == static_cast<double>(m))
    return GsdParams(snapped, 1.0, m);
  const auto env = variance_envelope(psi_hat, m);
  const double rho_hat =
      clamp01((env.v_max - sample.variance()) / (env.v_max - env.v_min));
  return GsdParams(psi_hat, rho_hat, m);
}

double log_likelihood(const GsdParams& params, const CountSample& sample) {
  if (sample.scale() != params.scale())
    throw std::domain_error("log_likelihood: scale mismatch");
  const Pmf p = pmf(params);
  double acc = 0.0;
  for (int k = 0; k < sample.scale(); ++k) {
    const auto n_k = sample.counts()[k];
    if (n_k == 0) continue;
    if (p[k] <= 0.0) return -kInf;
    acc += static_cast<double>(n_k) * std::log(p[k]);
  }
  return acc;
}

namespace detail {

namespace {

struct EnvelopeDerivatives {
  double c;        // C(psi)
  double c_prime;  // C'(psi)
};

// d/dpsi of v_min, v_max and the threshold C; valid away from integer psi.
EnvelopeDerivatives envelope_derivatives(double psi, int m) {
  const double v_min = (std::ceil(psi) - psi) * (psi - std::floor(psi));
  const double v_max = (psi - 1.0) * (m - psi);
  const double dv_min = -2.0 * psi + std::ceil(psi) + std::floor(psi);
  const double dv_max = -2.0 * psi + m + 1.0;
  const double gap = v_max - v_min;
  const double c = (static_cast<double>(m) - 2) / (m - 1) * v_max / gap;
  const double c_prime = (static_cast<double>(m) - 2) / (m - 1) *
                         (v_max * dv_min - dv_max * v_min) / (gap * gap);
  return {c, c_prime};
}

}  // namespace

PointGradient log_pmf_point_gradient(double psi, double rho, int m, int k) {
  const auto [c, c_prime] = envelope_derivatives(psi, m);
  if (rho < c) {
    // Beta-binomial branch.
    const double delta = c - rho;
    const double a1 = (psi - 1.0) * rho / (m - 1);
    const double a2 = (m - psi) * rho / (m - 1);
    const auto choose = binomial_row(m - 1);
    double log_p = std::log(choose[k - 1]);
    double dpsi = 0.0;
    double drho = 0.0;
    for (int i = 0; i <= k - 2; ++i) {
      const double f = a1 + i * delta;
      log_p += std::log(f);
      dpsi += (rho / (m - 1) + i * c_prime) / f;
      drho += ((psi - 1.0) / (m - 1) - i) / f;
    }
    for (int j = 0; j <= m - 1 - k; ++j) {
      const double f = a2 + j * delta;
      log_p += std::log(f);
      dpsi += (-rho / (m - 1) + j * c_prime) / f;
      drho += ((m - psi) / (m - 1) - j) / f;
    }
    for (int i = 0; i <= m - 2; ++i) {
      const double f = rho + i * delta;
      log_p -= std::log(f);
      dpsi -= i * c_prime / f;
      drho += (i - 1.0) / f;
    }
    return {log_p, dpsi, drho};
  }
  // Mixture branch; at rho == c these are the one-sided derivatives.
  const double p = (psi - 1.0) / (m - 1);
  const double q = (m - psi) / (m - 1);
  const auto choose = binomial_row(m - 1);
  const double bin = choose[k - 1] * std::pow(p, k - 1) * std::pow(q, m - k);
  const double tri = std::max(0.0, 1.0 - std::abs(k - psi));
  double tri_prime = 0.0;
  if (psi > k - 1 && psi < k)
    tri_prime = 1.0;
  else if (psi > k && psi < k + 1)
    tri_prime = -1.0;
  double bin_prime = 0.0;
  if (k >= 2)
    bin_prime += (k - 1.0) / (m - 1) * choose[k - 1] * std::pow(p, k - 2) *
                 std::pow(q, m - k);
  if (k <= m - 1)
    bin_prime -= (static_cast<double>(m) - k) / (m - 1) * choose[k - 1] *
                 std::pow(p, k - 1) * std::pow(q, m - 1 - k);
  const double u = (rho - c) * tri + (1.0 - rho) * bin;
  const double log_p = std::log(u) - std::log1p(-c);
  const double dpsi =
      ((rho - c) * tri_prime - c_prime * tri + (1.0 - rho) * bin_prime) / u +
      c_prime / (1.0 - c);
  const double drho = (tri - bin) / u;
  return {log_p, dpsi, drho};
}

double closed_form_log_likelihood(const GsdParams& params,
                                  const CountSample& sample) {
  const int m = params.scale();
  const double psi = snap_to_integer(params.psi());
  const double rho = params.rho();
  const auto& counts = sample.counts();
  if (psi == 1.0 || psi == static_cast<double>(m)) {
    const int support = psi == 1.0 ? 0 : m - 1;
    for (int k = 0; k < m; ++k)
      if (counts[k] > 0 && k != support) return -kInf;
    return 0.0;
  }
  const double c = regime_threshold(psi, m);
  const auto choose = binomial_row(m - 1);
  double acc = 0.0;
  if (rho < c) {
    if (rho == 0.0) {
      // Two-point limit of the product form.
      for (int k = 0; k < m; ++k) {
        if (counts[k] == 0) continue;
        if (k == 0)
          acc += counts[k] * std::log((m - psi) / (m - 1));
        else if (k == m - 1)
          acc += counts[k] * std::log((psi - 1.0) / (m - 1));
        else
          return -kInf;
      }
      return acc;
    }
    const double delta = c - rho;
    const double a1 = (psi - 1.0) * rho / (m - 1);
    const double a2 = (m - psi) * rho / (m - 1);
    double den = 0.0;
    for (int i = 0; i <= m - 2; ++i) den += std::log(rho + i * delta);
    for (int k = 1; k <= m; ++k) {
      if (counts[k - 1] == 0) continue;
      double lp = std::log(choose[k - 1]) - den;
      for (int i = 0; i <= k - 2; ++i) lp += std::log(a1 + i * delta);
      for (int j = 0; j <= m - 1 - k; ++j) lp += std::log(a2 + j * delta);
      acc += counts[k - 1] * lp;
    }
    return acc;
  }
  const double p = (psi - 1.0) / (m - 1);
  const double q = (m - psi) / (m - 1);
  for (int k = 1; k <= m; ++k) {
    if (counts[k - 1] == 0) continue;
    const double tri = std::max(0.0, 1.0 - std::abs(k - psi));
    const double bin =
        choose[k - 1] * std::pow(p, k - 1) * std::pow(q, m - k);
    const double u = (rho - c) * tri + (1.0 - rho) * bin;
    if (u <= 0.0) return -kInf;
    acc += counts[k - 1] * (std::log(u) - std::log1p(-c));
  }
  return acc;
}

}  // namespace detail

LogPmfGradient log_pmf_gradient(const GsdParams& params) {
  const int m = params.scale();
  const double psi = params.psi();
  const double rho = params.rho();
  const double snapped = detail::snap_to_integer(psi);
  if (snapped == std::floor(snapped))
    throw non_differentiable_error(
        "log_pmf_gradient: log-likelihood is not differentiable at integer psi");
  const double c = regime_threshold(psi, m);
  if (rho == c)
    throw non_differentiable_error(
        "log_pmf_gradient: rho sits exactly on the regime threshold");
  LogPmfGradient out;
  out.probs.resize(m);
  out.dpsi.resize(m);
  out.drho.resize(m);
  for (int k = 1; k <= m; ++k) {
    const auto g = detail::log_pmf_point_gradient(psi, rho, m, k);
    out.probs[k - 1] = std::exp(g.log_p);
    out.dpsi[k - 1] = g.dpsi;
    out.drho[k - 1] = g.drho;
  }
  return out;
}

std::pair<double, double> log_likelihood_gradient(const GsdParams& params,
                                                  const CountSample& sample) {
  if (sample.scale() != params.scale())
    throw std::domain_error("log_likelihood_gradient: scale mismatch");
  const auto g = log_pmf_gradient(params);
  double dpsi = 0.0;
  double drho = 0.0;
  for (int k = 0; k < sample.scale(); ++k) {
    const auto n_k = sample.counts()[k];
    if (n_k == 0) continue;
    dpsi += static_cast<double>(n_k) * g.dpsi[k];
    drho += static_cast<double>(n_k) * g.drho[k];
  }
  return {dpsi, drho};
}

GsdGrid::GsdGrid(int m, GridConfig config) : m_(m), config_(config) {
  if (m < 3) throw std::domain_error("GsdGrid: scale size must be >= 3");
  if (!(config.psi_step > 0.0 && config.psi_step <= 0.1) ||
      !(config.rho_step > 0.0 && config.rho_step <= 0.1))
    throw std::domain_error("GsdGrid: grid steps must lie in (0, 0.1]");

  const auto axis = [](double lo, double hi, double step) {
    const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
    std::vector<double> values(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
      values[i] = detail::snap_to_integer(lo + static_cast<double>(i) * step);
    values[n - 1] = hi;
    return values;
  };
  psi_values_ = axis(1.0, static_cast<double>(m), config.psi_step);
  rho_values_ = axis(0.0, 1.0, config.rho_step);

  const std::size_t points = psi_values_.size() * rho_values_.size();
  log_pmf_.resize(points * static_cast<std::size_t>(m));
  pmax_.resize(points);
  std::size_t idx = 0;
  for (double psi : psi_values_) {
    for (double rho : rho_values_) {
      const Pmf p = pmf(GsdParams(psi, rho, m));
      double top1 = 0.0, top2 = 0.0;
      for (int k = 0; k < m; ++k) {
        log_pmf_[idx * m + k] = p[k] > 0.0 ? std::log(p[k]) : -kInf;
        if (p[k] > top1) {
          top2 = top1;
          top1 = p[k];
        } else if (p[k] > top2) {
          top2 = p[k];
        }
      }
      pmax_[idx] = top1 + top2;
      ++idx;
    }
  }
}

GsdParams GsdGrid::params_at(std::size_t index) const {
  const std::size_t nrho = rho_values_.size();
  return GsdParams(psi_values_[index / nrho], rho_values_[index % nrho], m_);
}

FitResult GsdGrid::fit_impl(const CountSample& sample,
                            std::optional<double> pmax_cap) const {
  if (sample.scale() != m_)
    throw std::domain_error("GsdGrid: sample scale does not match the grid");
  // Gather occupied categories once; the scan is a short dot product per point.
  int nk = 0;
  std::array<int, 64> cat;
  std::array<double, 64> cnt;
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

  const double cap = pmax_cap.value_or(2.0);
  double best_ll = -kInf;
  std::size_t best = size();
  for (std::size_t g = 0; g < size(); ++g) {
    if (pmax_[g] > cap) continue;
    const double* row = log_pmf_.data() + g * m_;
    double ll = 0.0;
    for (int t = 0; t < nk; ++t) ll += cnts[t] * row[cats[t]];
    if (ll > best_ll) {
      best_ll = ll;
      best = g;
    }
  }
  if (best == size())
    throw std::logic_error("GsdGrid: feasible grid set is empty");
  FitResult result{params_at(best), best_ll,
                   pmax_cap ? FitMethod::ConstrainedGrid : FitMethod::Grid};
  result.psi_step = config_.psi_step;
  result.rho_step = config_.rho_step;
  return result;
}

FitResult GsdGrid::fit(const CountSample& sample) const {
  return fit_impl(sample, std::nullopt);
}

FitResult GsdGrid::fit_constrained(const CountSample& sample,
                                   double pmax_cap) const {
  return fit_impl(sample, pmax_cap);
}

FitResult mle_grid(const CountSample& sample, const GridConfig& config) {
  return GsdGrid(sample.scale(), config).fit(sample);
}

double p_max(const GsdParams& params) {
  const Pmf p = pmf(params);
  double top1 = 0.0, top2 = 0.0;
  for (double v : p) {
    if (v > top1) {
      top2 = top1;
      top1 = v;
    } else if (v > top2) {
      top2 = v;
    }
  }
  return top1 + top2;
}

FitResult mle_constrained(const CountSample& sample, const GridConfig& config) {
  return mle_constrained(sample, GsdGrid(sample.scale(), config));
}

FitResult mle_constrained(const CountSample& sample, const GsdGrid& grid) {
  if (sample.total() < 2)
    throw std::domain_error("mle_constrained: need a sample of size >= 2");
  return grid.fit_constrained(sample,
                              1.0 - 1.0 / static_cast<double>(sample.total()));
}

namespace {

struct Point {
  double psi;
  double rho;
};

// Gradient with psi nudged off integers and edges; rho on the threshold
// takes the mixture-branch (right-sided) derivative.
std::pair<double, double> nudged_gradient(const Point& x,
                                          const CountSample& sample, int m) {
  double psi = x.psi;
  const double nearest = std::round(psi);
  if (std::abs(psi - nearest) < 1e-9) {
    if (nearest <= 1.0)
      psi = 1.0 + 1e-9;
    else if (nearest >= static_cast<double>(m))
      psi = m - 1e-9;
    else
      psi = nearest + 1e-9;
  }
  double dpsi = 0.0;
  double drho = 0.0;
  for (int k = 0; k < m; ++k) {
    const auto n_k = sample.counts()[k];
    if (n_k == 0) continue;
    const auto g = detail::log_pmf_point_gradient(psi, x.rho, m, k + 1);
    dpsi += static_cast<double>(n_k) * g.dpsi;
    drho += static_cast<double>(n_k) * g.drho;
  }
  return {dpsi, drho};
}

}  // namespace

FitResult mle_gradient(const CountSample& sample,
                       std::optional<GsdParams> init) {
  const int m = sample.scale();
  const GsdParams start = init.value_or(moments_estimate(sample));
  if (start.scale() != m)
    throw std::domain_error("mle_gradient: init scale mismatch");

  Point x{start.psi(), start.rho()};
  double ll = log_likelihood(start, sample);
  constexpr double kStep = 0.1;
  constexpr double kTol = 1e-8;
  constexpr int kMaxIter = 10000;

  // A point-mass start can only occur when it already fits the data exactly.
  if (ll == 0.0)
    return {start, ll, FitMethod::Gradient, 0.0, 0.0, 0, true};
  if (ll == -kInf) {
    // Degenerate user-supplied start; pull it into the interior.
    x.psi = std::clamp(x.psi, 1.0 + 1e-6, m - 1e-6);
    x.rho = std::clamp(x.rho, 1e-6, 1.0 - 1e-6);
    ll = log_likelihood(GsdParams(x.psi, x.rho, m), sample);
  }

  int iter = 0;
  bool converged = false;
  for (; iter < kMaxIter; ++iter) {
    const auto [dpsi, drho] = nudged_gradient(x, sample, m);
    double t = kStep;
    Point cand{};
    double cand_ll = -kInf;
    bool accepted = false;
    while (t >= 1e-16) {
      cand.psi = std::clamp(x.psi + t * dpsi, 1.0, static_cast<double>(m));
      cand.rho = std::clamp(x.rho + t * drho, 0.0, 1.0);
      cand_ll = log_likelihood(GsdParams(cand.psi, cand.rho, m), sample);
      if (cand_ll > ll) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      converged = true;
      break;
    }
    const double moved = std::hypot(cand.psi - x.psi, cand.rho - x.rho);
    x = cand;
    ll = cand_ll;
    if (moved < kTol) {
      converged = true;
      ++iter;
      break;
    }
  }
  FitResult result{GsdParams(x.psi, x.rho, m), ll, FitMethod::Gradient};
  result.iterations = iter;
  result.converged = converged;
  return result;
}

Pmf epmf(const CountSample& sample) {
  Pmf p(sample.scale());
  for (int k = 0; k < sample.scale(); ++k)
    p[k] = static_cast<double>(sample.counts()[k]) /
           static_cast<double>(sample.total());
  return p;
}

Pmf modified_epmf(const CountSample& sample) {
  const double denom =
      static_cast<double>(sample.total()) + 0.5 * sample.scale();
  Pmf p(sample.scale());
  for (int k = 0; k < sample.scale(); ++k)
    p[k] = (static_cast<double>(sample.counts()[k]) + 0.5) / denom;
  return p;
}

}  // namespace gsd
