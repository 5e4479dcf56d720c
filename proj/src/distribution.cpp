#include "gsd/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gsd/rng.hpp"

namespace gsd {

namespace {

bool at_lower_edge(double psi) { return detail::snap_to_integer(psi) == 1.0; }
bool at_upper_edge(double psi, int m) {
  return detail::snap_to_integer(psi) == static_cast<double>(m);
}

Pmf point_mass(int m, int k) {
  Pmf p(m, 0.0);
  p[k - 1] = 1.0;
  return p;
}

// Triangular probabilities [1 - |k - psi|]_+ for k = 1..m. Support is
// {floor(psi), ceil(psi)}; collapses to a point mass at integer psi.
Pmf triangular_pmf(double psi, int m) {
  Pmf p(m, 0.0);
  const double s = detail::snap_to_integer(psi);
  const int lo = static_cast<int>(std::floor(s));
  const int hi = static_cast<int>(std::ceil(s));
  if (lo == hi) {
    p[lo - 1] = 1.0;
  } else {
    p[lo - 1] = hi - s;
    p[hi - 1] = s - lo;
  }
  return p;
}

}  // namespace

GsdParams::GsdParams(double psi, double rho, int m) : psi_(psi), rho_(rho), m_(m) {
  if (m < 3) throw std::domain_error("GsdParams: scale size must be >= 3");
  if (!(psi >= 1.0 && psi <= static_cast<double>(m)))
    throw std::domain_error("GsdParams: psi must lie in [1, M]");
  if (!(rho >= 0.0 && rho <= 1.0))
    throw std::domain_error("GsdParams: rho must lie in [0, 1]");
}

VarianceEnvelope variance_envelope(double psi, int m) {
  if (m < 3) throw std::domain_error("variance_envelope: scale size must be >= 3");
  if (!(psi >= 1.0 && psi <= static_cast<double>(m)))
    throw std::domain_error("variance_envelope: psi must lie in [1, M]");
  const double s = detail::snap_to_integer(psi);
  const double v_min = (std::ceil(s) - s) * (s - std::floor(s));
  const double v_max = (s - 1.0) * (m - s);
  const double v_bin = v_max / (m - 1);
  // The threshold ratio degenerates to 0/0 at the scale edges; its one-sided
  // limit is 1, which also forces the point-mass PMF for every rho there.
  double c = 1.0;
  if (v_max > 0.0)
    c = (static_cast<double>(m) - 2) / (m - 1) * v_max / (v_max - v_min);
  return {v_min, v_max, v_bin, c};
}

double regime_threshold(double psi, int m) {
  return variance_envelope(psi, m).c;
}

namespace detail {

std::vector<double> binomial_row(int n) {
  std::vector<double> row(n + 1);
  row[0] = 1.0;
  for (int k = 0; k < n; ++k) row[k + 1] = row[k] * (n - k) / (k + 1);
  return row;
}

Pmf shifted_binomial_pmf(double psi, int m) {
  const double p = (psi - 1.0) / (m - 1);
  const double q = (m - psi) / (m - 1);
  const auto choose = binomial_row(m - 1);
  Pmf out(m);
  for (int k = 1; k <= m; ++k)
    out[k - 1] = choose[k - 1] * std::pow(p, k - 1) * std::pow(q, m - k);
  return out;
}

Pmf beta_binomial_pmf(double alpha, double beta, int m) {
  const int n = m - 1;
  const auto choose = binomial_row(n);
  const double lbeta0 = std::lgamma(alpha) + std::lgamma(beta) -
                        std::lgamma(alpha + beta);
  Pmf out(m);
  for (int k = 0; k <= n; ++k) {
    const double lbeta_k = std::lgamma(alpha + k) + std::lgamma(beta + n - k) -
                           std::lgamma(alpha + beta + n);
    out[k] = choose[k] * std::exp(lbeta_k - lbeta0);
  }
  return out;
}

}  // namespace detail

namespace {

// Beta-binomial branch (rho < C), in the factor-cancelled product form. The
// raw product formula is 0/0 at rho = 0; cancelling the i = 0 factors makes
// the expression exact there and keeps every factor strictly positive, so
// the evaluation is cancellation-free on the whole branch.
Pmf overdispersed_pmf(double psi, double rho, int m, double c) {
  const double delta = c - rho;
  const double a1 = (psi - 1.0) * rho / (m - 1);
  const double a2 = (m - psi) * rho / (m - 1);
  const auto choose = detail::binomial_row(m - 1);

  double den = 1.0;
  for (int i = 1; i <= m - 2; ++i) den *= rho + i * delta;

  Pmf out(m);
  {
    double v = (m - psi) / (m - 1);
    for (int j = 1; j <= m - 2; ++j) v *= (a2 + j * delta) / (rho + j * delta);
    out[0] = v;
  }
  for (int k = 2; k <= m - 1; ++k) {
    double num = 1.0;
    for (int i = 1; i <= k - 2; ++i) num *= a1 + i * delta;
    for (int j = 1; j <= m - k - 1; ++j) num *= a2 + j * delta;
    out[k - 1] = choose[k - 1] * (psi - 1.0) * (m - psi) * rho /
                 ((m - 1.0) * (m - 1.0)) * num / den;
  }
  {
    double v = (psi - 1.0) / (m - 1);
    for (int i = 1; i <= m - 2; ++i) v *= (a1 + i * delta) / (rho + i * delta);
    out[m - 1] = v;
  }
  return out;
}

// Mixture branch (rho >= C): weight d on the minimal-variance triangular
// distribution, 1-d on the shifted binomial.
Pmf underdispersed_pmf(double psi, double rho, int m, double c) {
  const double d = (rho - c) / (1.0 - c);
  const double w = (1.0 - rho) / (1.0 - c);
  const Pmf tri = triangular_pmf(psi, m);
  const Pmf bin = detail::shifted_binomial_pmf(psi, m);
  Pmf out(m);
  for (int k = 0; k < m; ++k) out[k] = d * tri[k] + w * bin[k];
  return out;
}

}  // namespace

Pmf pmf(const GsdParams& params) {
  const int m = params.scale();
  const double psi = detail::snap_to_integer(params.psi());
  const double rho = params.rho();
  if (at_lower_edge(psi)) return point_mass(m, 1);
  if (at_upper_edge(psi, m)) return point_mass(m, m);
  const double c = regime_threshold(psi, m);
  if (rho >= c) return underdispersed_pmf(psi, rho, m, c);
  return overdispersed_pmf(psi, rho, m, c);
}

std::pair<double, double> moments(const GsdParams& params) {
  const auto env = variance_envelope(params.psi(), params.scale());
  return {params.psi(),
          params.rho() * env.v_min + (1.0 - params.rho()) * env.v_max};
}

double cdf(const GsdParams& params, int k) {
  if (k < 1 || k > params.scale())
    throw std::domain_error("cdf: k must lie in {1,...,M}");
  if (k == params.scale()) return 1.0;
  const Pmf p = pmf(params);
  double acc = 0.0;
  for (int i = 0; i < k; ++i) acc += p[i];
  return std::min(acc, 1.0);
}

int quantile(const GsdParams& params, double u) {
  if (!(u >= 0.0 && u <= 1.0))
    throw std::domain_error("quantile: u must lie in [0, 1]");
  const Pmf p = pmf(params);
  double acc = 0.0;
  for (int k = 1; k < params.scale(); ++k) {
    acc += p[k - 1];
    if (acc >= u) return k;
  }
  return params.scale();
}

std::vector<int> sample(const GsdParams& params, int n, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("sample: n must be >= 1");
  const Pmf p = pmf(params);
  std::vector<double> prefix(p.size());
  std::partial_sum(p.begin(), p.end(), prefix.begin());
  prefix.back() = 1.0;
  Rng rng(seed);
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = rng.categorical(prefix) + 1;
  return out;
}

LatentSpec latent_decomposition(const GsdParams& params) {
  const int m = params.scale();
  const double psi = detail::snap_to_integer(params.psi());
  const double rho = params.rho();
  if (at_lower_edge(psi) || at_upper_edge(psi, m))
    throw std::domain_error(
        "latent_decomposition: degenerate point mass at psi in {1, M}");
  const double c = regime_threshold(psi, m);
  LatentSpec spec;
  if (rho >= c) {
    spec.regime = DispersionRegime::Underdispersed;
    spec.mix_weight = (rho - c) / (1.0 - c);
    spec.y_prob = (psi - 1.0) / (m - 1);
    spec.x_probs.resize(m - 1, 0.0);
    const int lo = static_cast<int>(std::floor(psi));
    const int hi = static_cast<int>(std::ceil(psi));
    for (int i = 1; i <= m - 1; ++i) {
      if (i <= lo - 1)
        spec.x_probs[i - 1] = 1.0;
      else if (i == hi - 1)
        spec.x_probs[i - 1] = psi + 1.0 - hi;
    }
  } else {
    if (rho <= 0.0)
      throw std::domain_error(
          "latent_decomposition: beta parameters are undefined at rho = 0");
    spec.regime = DispersionRegime::Overdispersed;
    spec.alpha = (psi - 1.0) * rho / ((m - 1) * (c - rho));
    spec.beta = (m - psi) * rho / ((m - 1) * (c - rho));
  }
  return spec;
}

Pmf latent_pmf(const LatentSpec& spec, int m) {
  if (spec.regime == DispersionRegime::Overdispersed)
    return detail::beta_binomial_pmf(spec.alpha, spec.beta, m);
  // Sum of the X_i is triangular around psi; sum of the Y_i is the shifted
  // binomial. The shared indicator D makes U-1 their mixture.
  if (static_cast<int>(spec.x_probs.size()) != m - 1)
    throw std::domain_error("latent_pmf: x_probs length must be M-1");
  Pmf tri(m, 0.0);
  {
    // Poisson-binomial of the deterministic/triangular X_i: at most one
    // fractional success probability, so the convolution is a two-point mass.
    int ones = 0;
    double frac = 0.0;
    for (double q : spec.x_probs) {
      if (q == 1.0)
        ++ones;
      else if (q > 0.0)
        frac = q;
    }
    if (frac > 0.0) {
      tri[ones] = 1.0 - frac;
      tri[ones + 1] = frac;
    } else {
      tri[ones] = 1.0;
    }
  }
  const double psi_from_y = 1.0 + spec.y_prob * (m - 1);
  const Pmf bin = detail::shifted_binomial_pmf(psi_from_y, m);
  Pmf out(m);
  for (int k = 0; k < m; ++k)
    out[k] = spec.mix_weight * tri[k] + (1.0 - spec.mix_weight) * bin[k];
  return out;
}

std::vector<int> sample_latent(const GsdParams& params, int n,
                               std::uint64_t seed) {
  if (n < 1) throw std::domain_error("sample_latent: n must be >= 1");
  const LatentSpec spec = latent_decomposition(params);
  const int m = params.scale();
  Rng rng(seed);
  std::vector<int> out(n);
  for (int r = 0; r < n; ++r) {
    int successes = 0;
    if (spec.regime == DispersionRegime::Underdispersed) {
      const bool use_x = rng.uniform() < spec.mix_weight;
      for (int i = 0; i < m - 1; ++i) {
        const double q = use_x ? spec.x_probs[i] : spec.y_prob;
        if (rng.uniform() < q) ++successes;
      }
    } else {
      const double b = rng.beta(spec.alpha, spec.beta);
      for (int i = 0; i < m - 1; ++i)
        if (rng.uniform() < b) ++successes;
    }
    out[r] = 1 + successes;
  }
  return out;
}

double phi(const GsdParams& params, double x) {
  const int m = params.scale();
  const double psi = detail::snap_to_integer(params.psi());
  const double rho = params.rho();
  if (x < 1.0 || x > static_cast<double>(m - 1))
    throw std::domain_error("phi: x must lie in [1, M-1]");
  const double c = regime_threshold(psi, m);
  if (rho < c)
    throw std::domain_error("phi: defined for the underdispersed regime only");
  const double d = (rho - c) / (1.0 - c);
  const double tail = (1.0 - rho) * (psi - 1.0) / ((1.0 - c) * (m - 1));
  if (x <= psi - 1.0) return d + tail;
  if (x <= psi) return d * (psi - x) + tail;
  return tail;
}

bool validate_general_phi(std::span<const double> phi_values, double psi,
                          double rho) {
  if (phi_values.size() < 2)
    throw std::domain_error("validate_general_phi: need at least 2 values");
  const int m = static_cast<int>(phi_values.size()) + 1;
  constexpr double tol = 1e-9;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : phi_values) {
    if (v < -tol || v > 1.0 + tol) return false;
    sum += v;
    sum_sq += v * v;
  }
  const auto env = variance_envelope(psi, m);
  const double want_sq =
      psi - 1.0 - (1.0 - rho) * env.v_max - rho * env.v_min;
  return std::abs(sum - (psi - 1.0)) <= tol &&
         std::abs(sum_sq - want_sq) <= tol;
}

}  // namespace gsd
