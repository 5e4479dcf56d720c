#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gsd/compare.hpp"
#include "gsd/gof.hpp"
#include "gsd/matrix.hpp"
#include "gsd/probit.hpp"
#include "gsd/rmsd.hpp"
#include "gsd/version.hpp"

namespace py = pybind11;

namespace {

gsd::CountSample make_sample(const std::vector<std::int64_t>& counts) {
  return gsd::CountSample(counts);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generalised score distributions on {1,...,M}: exact "
            "probabilities, estimation, goodness-of-fit testing, and "
            "rater/stimulus models";
  m.attr("__version__") = gsd::kVersion;

  py::register_exception<gsd::non_differentiable_error>(
      m, "NonDifferentiableError", PyExc_ArithmeticError);

  py::class_<gsd::GsdParams>(m, "GsdParams")
      .def(py::init<double, double, int>(), py::arg("psi"), py::arg("rho"),
           py::arg("m"))
      .def_property_readonly("psi", &gsd::GsdParams::psi)
      .def_property_readonly("rho", &gsd::GsdParams::rho)
      .def_property_readonly("m", &gsd::GsdParams::scale)
      .def("__repr__", [](const gsd::GsdParams& p) {
        return "GsdParams(psi=" + std::to_string(p.psi()) +
               ", rho=" + std::to_string(p.rho()) +
               ", m=" + std::to_string(p.scale()) + ")";
      });

  py::class_<gsd::VarianceEnvelope>(m, "VarianceEnvelope")
      .def_readonly("v_min", &gsd::VarianceEnvelope::v_min)
      .def_readonly("v_max", &gsd::VarianceEnvelope::v_max)
      .def_readonly("v_bin", &gsd::VarianceEnvelope::v_bin)
      .def_readonly("c", &gsd::VarianceEnvelope::c);

  m.def("variance_envelope", &gsd::variance_envelope, py::arg("psi"),
        py::arg("m"));
  m.def("regime_threshold", &gsd::regime_threshold, py::arg("psi"),
        py::arg("m"));
  m.def("pmf", &gsd::pmf, py::arg("params"));
  m.def("moments", &gsd::moments, py::arg("params"));
  m.def("cdf", &gsd::cdf, py::arg("params"), py::arg("k"));
  m.def("quantile", &gsd::quantile, py::arg("params"), py::arg("u"));
  m.def("sample", &gsd::sample, py::arg("params"), py::arg("n"),
        py::arg("seed"));
  m.def("phi", &gsd::phi, py::arg("params"), py::arg("x"));
  m.def(
      "validate_general_phi",
      [](const std::vector<double>& values, double psi, double rho) {
        return gsd::validate_general_phi(values, psi, rho);
      },
      py::arg("phi_values"), py::arg("psi"), py::arg("rho"));

  py::enum_<gsd::DispersionRegime>(m, "DispersionRegime")
      .value("Underdispersed", gsd::DispersionRegime::Underdispersed)
      .value("Overdispersed", gsd::DispersionRegime::Overdispersed);

  py::class_<gsd::LatentSpec>(m, "LatentSpec")
      .def_readonly("regime", &gsd::LatentSpec::regime)
      .def_readonly("mix_weight", &gsd::LatentSpec::mix_weight)
      .def_readonly("x_probs", &gsd::LatentSpec::x_probs)
      .def_readonly("y_prob", &gsd::LatentSpec::y_prob)
      .def_readonly("alpha", &gsd::LatentSpec::alpha)
      .def_readonly("beta", &gsd::LatentSpec::beta);

  m.def("latent_decomposition", &gsd::latent_decomposition, py::arg("params"));
  m.def("latent_pmf", &gsd::latent_pmf, py::arg("spec"), py::arg("m"));
  m.def("sample_latent", &gsd::sample_latent, py::arg("params"), py::arg("n"),
        py::arg("seed"));

  py::class_<gsd::CountSample>(m, "CountSample")
      .def(py::init(&make_sample), py::arg("counts"))
      .def_static(
          "from_scores",
          [](const std::vector<int>& scores, int m) {
            return gsd::CountSample::from_scores(scores, m);
          },
          py::arg("scores"), py::arg("m"))
      .def_property_readonly("counts", &gsd::CountSample::counts)
      .def_property_readonly("n", &gsd::CountSample::total)
      .def_property_readonly("m", &gsd::CountSample::scale)
      .def_property_readonly("mean", &gsd::CountSample::mean)
      .def_property_readonly("variance", &gsd::CountSample::variance);

  py::enum_<gsd::FitMethod>(m, "FitMethod")
      .value("Moments", gsd::FitMethod::Moments)
      .value("Grid", gsd::FitMethod::Grid)
      .value("Gradient", gsd::FitMethod::Gradient)
      .value("ConstrainedGrid", gsd::FitMethod::ConstrainedGrid);

  py::class_<gsd::FitResult>(m, "FitResult")
      .def_readonly("params", &gsd::FitResult::params)
      .def_readonly("log_likelihood", &gsd::FitResult::log_likelihood)
      .def_readonly("method", &gsd::FitResult::method)
      .def_readonly("iterations", &gsd::FitResult::iterations)
      .def_readonly("converged", &gsd::FitResult::converged);

  py::class_<gsd::GridConfig>(m, "GridConfig")
      .def(py::init([](double psi_step, double rho_step) {
             return gsd::GridConfig{psi_step, rho_step};
           }),
           py::arg("psi_step") = 0.01, py::arg("rho_step") = 0.01)
      .def_readwrite("psi_step", &gsd::GridConfig::psi_step)
      .def_readwrite("rho_step", &gsd::GridConfig::rho_step);

  m.def("moments_estimate", &gsd::moments_estimate, py::arg("sample"));
  m.def("log_likelihood", &gsd::log_likelihood, py::arg("params"),
        py::arg("sample"));
  m.def("log_likelihood_gradient", &gsd::log_likelihood_gradient,
        py::arg("params"), py::arg("sample"));
  m.def("mle_grid", &gsd::mle_grid, py::arg("sample"),
        py::arg("grid") = gsd::GridConfig{});
  m.def(
      "mle_gradient",
      [](const gsd::CountSample& sample, std::optional<gsd::GsdParams> init) {
        return gsd::mle_gradient(sample, init);
      },
      py::arg("sample"), py::arg("init") = std::nullopt);
  m.def("p_max", &gsd::p_max, py::arg("params"));
  m.def(
      "mle_constrained",
      [](const gsd::CountSample& sample, const gsd::GridConfig& grid) {
        return gsd::mle_constrained(sample, grid);
      },
      py::arg("sample"), py::arg("grid") = gsd::GridConfig{});
  m.def("epmf", &gsd::epmf, py::arg("sample"));
  m.def("modified_epmf", &gsd::modified_epmf, py::arg("sample"));

  py::class_<gsd::ProbitParams>(m, "ProbitParams")
      .def(py::init<double, double, int>(), py::arg("mu"), py::arg("sigma"),
           py::arg("m"))
      .def_property_readonly("mu", &gsd::ProbitParams::mu)
      .def_property_readonly("sigma", &gsd::ProbitParams::sigma)
      .def_property_readonly("m", &gsd::ProbitParams::scale);

  py::class_<gsd::ProbitFitResult>(m, "ProbitFitResult")
      .def_readonly("params", &gsd::ProbitFitResult::params)
      .def_readonly("log_likelihood", &gsd::ProbitFitResult::log_likelihood);

  m.def("probit_pmf", &gsd::probit_pmf, py::arg("params"));
  m.def("probit_induced_moments", &gsd::probit_induced_moments,
        py::arg("params"));
  m.def(
      "probit_mle_grid",
      [](const gsd::CountSample& sample) { return gsd::probit_mle_grid(sample); },
      py::arg("sample"));

  py::enum_<gsd::GofModel>(m, "GofModel")
      .value("Gsd", gsd::GofModel::Gsd)
      .value("OrderedProbit", gsd::GofModel::OrderedProbit);

  py::class_<gsd::GofResult>(m, "GofResult")
      .def_readonly("t_statistic", &gsd::GofResult::t_statistic)
      .def_readonly("p_value", &gsd::GofResult::p_value)
      .def_readonly("mc", &gsd::GofResult::mc)
      .def_readonly("fitted_pmf", &gsd::GofResult::fitted_pmf);

  m.def("g_statistic", &gsd::g_statistic, py::arg("sample"), py::arg("fitted"));
  m.def(
      "bootstrap_g_test",
      [](const gsd::CountSample& sample, gsd::GofModel model, int mc,
         std::uint64_t seed) {
        return gsd::bootstrap_g_test(sample, model, mc, seed);
      },
      py::arg("sample"), py::arg("model"), py::arg("mc"), py::arg("seed"));

  py::class_<gsd::PpPlotPoint>(m, "PpPlotPoint")
      .def_readonly("x", &gsd::PpPlotPoint::x)
      .def_readonly("ecdf", &gsd::PpPlotPoint::ecdf)
      .def_readonly("bound", &gsd::PpPlotPoint::bound);

  m.def(
      "pp_plot_data",
      [](const std::vector<double>& p_values, double alpha, int grid_points) {
        return gsd::pp_plot_data(p_values, alpha,
                                 gsd::PpBound::PointwiseBinomial, grid_points);
      },
      py::arg("p_values"), py::arg("alpha") = 0.05,
      py::arg("grid_points") = 101);

  py::enum_<gsd::CompareVariant>(m, "CompareVariant")
      .value("Unmodified", gsd::CompareVariant::Unmodified)
      .value("Corrected", gsd::CompareVariant::Corrected);

  py::enum_<gsd::CompareVerdict>(m, "CompareVerdict")
      .value("GsdBetter", gsd::CompareVerdict::GsdBetter)
      .value("EpmfBetter", gsd::CompareVerdict::EpmfBetter)
      .value("NoDifference", gsd::CompareVerdict::NoDifference);

  py::class_<gsd::CompareResult>(m, "CompareResult")
      .def_readonly("p_hat_gsd", &gsd::CompareResult::p_hat_gsd)
      .def_readonly("p_hat_e", &gsd::CompareResult::p_hat_e)
      .def_readonly("diff", &gsd::CompareResult::diff)
      .def_readonly("ci_low", &gsd::CompareResult::ci_low)
      .def_readonly("ci_high", &gsd::CompareResult::ci_high)
      .def_readonly("mc", &gsd::CompareResult::mc)
      .def_readonly("n_small", &gsd::CompareResult::n_small)
      .def_readonly("verdict", &gsd::CompareResult::verdict)
      .def_readonly("ties", &gsd::CompareResult::ties)
      .def_readonly("undefined_ties", &gsd::CompareResult::undefined_ties);

  m.def(
      "compare_models",
      [](const gsd::CountSample& large, int n_small, int mc,
         gsd::CompareVariant variant, std::uint64_t seed) {
        return gsd::compare_models(large, n_small, mc, variant, seed);
      },
      py::arg("large_sample"), py::arg("n_small"), py::arg("mc"),
      py::arg("variant"), py::arg("seed"));

  py::class_<gsd::RatingMatrix>(m, "RatingMatrix")
      .def(py::init([](int raters, int stimuli, int m_scale,
                       const std::vector<std::tuple<int, int, int>>& entries) {
             std::vector<gsd::RatingEntry> converted;
             converted.reserve(entries.size());
             for (const auto& [i, j, score] : entries)
               converted.push_back({i, j, score});
             return gsd::RatingMatrix(raters, stimuli, m_scale,
                                      std::move(converted));
           }),
           py::arg("raters"), py::arg("stimuli"), py::arg("m"),
           py::arg("entries"))
      .def_property_readonly("raters", &gsd::RatingMatrix::raters)
      .def_property_readonly("stimuli", &gsd::RatingMatrix::stimuli)
      .def_property_readonly("m", &gsd::RatingMatrix::scale)
      .def_property_readonly("scores", [](const gsd::RatingMatrix& r) {
        std::vector<std::tuple<int, int, int>> out;
        out.reserve(r.entries().size());
        for (const auto& e : r.entries())
          out.emplace_back(e.rater, e.stimulus, e.score);
        return out;
      });

  py::class_<gsd::MatrixFit>(m, "MatrixFit")
      .def_readonly("psi", &gsd::MatrixFit::psi)
      .def_readonly("rho", &gsd::MatrixFit::rho)
      .def_readonly("log_likelihood", &gsd::MatrixFit::log_likelihood)
      .def_readonly("sweeps", &gsd::MatrixFit::sweeps)
      .def_readonly("converged", &gsd::MatrixFit::converged);

  m.def(
      "simulate_matrix",
      [](const std::vector<double>& psi, const std::vector<double>& rho,
         int m_scale, std::uint64_t seed) {
        return gsd::simulate_matrix(psi, rho, m_scale, seed);
      },
      py::arg("psi"), py::arg("rho"), py::arg("m"), py::arg("seed"));
  m.def(
      "fit_matrix",
      [](const gsd::RatingMatrix& ratings, double tol, int max_sweeps) {
        return gsd::fit_matrix(ratings, {tol, max_sweeps});
      },
      py::arg("ratings"), py::arg("tol") = 1e-8, py::arg("max_sweeps") = 500);
  m.def(
      "matrix_log_likelihood",
      [](const gsd::RatingMatrix& ratings, const std::vector<double>& psi,
         const std::vector<double>& rho) {
        return gsd::matrix_log_likelihood(ratings, psi, rho);
      },
      py::arg("ratings"), py::arg("psi"), py::arg("rho"));
}
