#include "gsd/report.hpp"

#include <cmath>

#include "gsd/version.hpp"

namespace gsd {

namespace {

// JSON has no infinity; map the -inf log-likelihood sentinel to null.
nlohmann::json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string method_name(FitMethod method) {
  switch (method) {
    case FitMethod::Moments: return "moments";
    case FitMethod::Grid: return "grid";
    case FitMethod::Gradient: return "gradient";
    case FitMethod::ConstrainedGrid: return "constrained";
  }
  return "unknown";
}

std::string verdict_name(CompareVerdict verdict) {
  switch (verdict) {
    case CompareVerdict::GsdBetter: return "gsd_better";
    case CompareVerdict::EpmfBetter: return "epmf_better";
    case CompareVerdict::NoDifference: return "no_difference";
  }
  return "unknown";
}

nlohmann::json to_json(const GsdParams& params) {
  return {{"psi", params.psi()}, {"rho", params.rho()}, {"m", params.scale()}};
}

nlohmann::json to_json(const FitResult& fit) {
  nlohmann::json j{{"params", to_json(fit.params)},
                   {"log_likelihood", finite_or_null(fit.log_likelihood)},
                   {"method", method_name(fit.method)}};
  if (fit.method == FitMethod::Grid || fit.method == FitMethod::ConstrainedGrid) {
    j["psi_step"] = fit.psi_step;
    j["rho_step"] = fit.rho_step;
  }
  if (fit.method == FitMethod::Gradient) {
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;
  }
  return j;
}

nlohmann::json to_json(const ProbitFitResult& fit) {
  return {{"params",
           {{"mu", fit.params.mu()},
            {"sigma", fit.params.sigma()},
            {"m", fit.params.scale()}}},
          {"log_likelihood", finite_or_null(fit.log_likelihood)},
          {"method", "probit_grid"}};
}

nlohmann::json to_json(const GofResult& gof) {
  nlohmann::json fitted = std::holds_alternative<FitResult>(gof.fitted)
                              ? to_json(std::get<FitResult>(gof.fitted))
                              : to_json(std::get<ProbitFitResult>(gof.fitted));
  return {{"t_statistic", finite_or_null(gof.t_statistic)},
          {"p_value", gof.p_value},
          {"mc", gof.mc},
          {"fitted", std::move(fitted)},
          {"fitted_pmf", gof.fitted_pmf}};
}

nlohmann::json to_json(const CompareResult& result) {
  return {{"p_hat_gsd", result.p_hat_gsd},
          {"p_hat_e", result.p_hat_e},
          {"diff", result.diff},
          {"ci_low", result.ci_low},
          {"ci_high", result.ci_high},
          {"mc", result.mc},
          {"n_small", result.n_small},
          {"verdict", verdict_name(result.verdict)},
          {"ties", result.ties},
          {"undefined_ties", result.undefined_ties}};
}

nlohmann::json make_report(const std::string& command, nlohmann::json settings,
                           nlohmann::json results) {
  return {{"schema_version", kReportSchemaVersion},
          {"tool", {{"name", "gsd"}, {"version", kVersion}}},
          {"command", command},
          {"settings", std::move(settings)},
          {"results", std::move(results)}};
}

}  // namespace gsd
