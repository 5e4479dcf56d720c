#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsd/compare.hpp"
#include "gsd/csv.hpp"
#include "gsd/gof.hpp"
#include "gsd/matrix.hpp"
#include "gsd/probit.hpp"
#include "gsd/report.hpp"
#include "gsd/rmsd.hpp"
#include "gsd/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw gsd::csv_error(out_path + ": cannot open for writing");
  out << content;
}

std::string dump_report(const nlohmann::json& report) {
  return report.dump(2) + "\n";
}

gsd::FitResult run_fit(const gsd::CountSample& sample,
                       const std::string& method, double grid_step) {
  const gsd::GridConfig grid{grid_step, grid_step};
  if (method == "moments") {
    const gsd::GsdParams params = gsd::moments_estimate(sample);
    return {params, gsd::log_likelihood(params, sample),
            gsd::FitMethod::Moments};
  }
  if (method == "grid") return gsd::mle_grid(sample, grid);
  if (method == "gradient") return gsd::mle_gradient(sample);
  if (method == "constrained") return gsd::mle_constrained(sample, grid);
  throw CLI::ValidationError("--method", "unknown method '" + method + "'");
}

struct CommonOpts {
  std::string input;
  std::string out;
  int m = 5;
  std::uint64_t seed = 1;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalised score distributions on {1,...,M}: exact "
               "probabilities, estimation, goodness-of-fit, and rater/stimulus "
               "models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("gsd ") + gsd::kVersion);

  // ---- fit ----------------------------------------------------------------
  CommonOpts fit_opts;
  std::string fit_method = "grid";
  double fit_grid_step = 0.01;
  auto* cmd_fit = app.add_subcommand("fit", "Estimate (psi, rho) per stimulus");
  cmd_fit->add_option("--input", fit_opts.input, "Scores CSV")->required();
  cmd_fit->add_option("--m", fit_opts.m, "Scale size (default 5)");
  cmd_fit->add_option("--method", fit_method,
                      "moments|grid|gradient|constrained");
  cmd_fit->add_option("--grid-step", fit_grid_step, "Grid step for psi and rho");
  cmd_fit->add_option("--out", fit_opts.out, "Output file (default stdout)");

  // ---- gof ----------------------------------------------------------------
  CommonOpts gof_opts;
  std::string gof_model = "gsd";
  int gof_mc = 10000;
  double gof_grid_step = 0.01;
  bool gof_unconstrained = false;
  std::string gof_pp_out;
  double gof_alpha = 0.05;
  auto* cmd_gof =
      app.add_subcommand("gof", "Bootstrapped G-test of goodness-of-fit");
  cmd_gof->add_option("--input", gof_opts.input, "Scores CSV")->required();
  cmd_gof->add_option("--m", gof_opts.m, "Scale size (default 5)");
  cmd_gof->add_option("--model", gof_model, "gsd|probit");
  cmd_gof->add_option("--mc", gof_mc, "Bootstrap replicates (default 10000)");
  cmd_gof->add_option("--seed", gof_opts.seed, "RNG seed");
  cmd_gof->add_option("--grid-step", gof_grid_step, "GSD grid step");
  cmd_gof->add_flag("--unconstrained", gof_unconstrained,
                    "Fit the GSD without the p_max cap");
  cmd_gof->add_option("--pp-out", gof_pp_out,
                      "Write the p-value P-P curve to this CSV");
  cmd_gof->add_option("--alpha", gof_alpha, "P-P bound level (default 0.05)");
  cmd_gof->add_option("--out", gof_opts.out, "Output file (default stdout)");

  // ---- sample -------------------------------------------------------------
  double sample_psi = 3.0;
  double sample_rho = 0.8;
  int sample_m = 5;
  int sample_n = 1;
  std::uint64_t sample_seed = 1;
  std::string sample_out;
  auto* cmd_sample = app.add_subcommand("sample", "Draw scores from a GSD");
  cmd_sample->add_option("--psi", sample_psi, "Expected value")->required();
  cmd_sample->add_option("--rho", sample_rho, "Confidence parameter")->required();
  cmd_sample->add_option("--m", sample_m, "Scale size (default 5)");
  cmd_sample->add_option("-n,--n", sample_n, "Number of draws")->required();
  cmd_sample->add_option("--seed", sample_seed, "RNG seed");
  cmd_sample->add_option("--out", sample_out, "Output file (default stdout)");

  // ---- compare ------------------------------------------------------------
  CommonOpts cmp_opts;
  std::vector<int> cmp_n_small{12, 24, 50};
  int cmp_mc = 10000;
  std::string cmp_variant = "unmodified";
  double cmp_grid_step = 0.01;
  std::string cmp_hist_out;
  int cmp_bins = 40;
  auto* cmd_cmp = app.add_subcommand(
      "compare", "GSD vs empirical PMF on large-sample likelihood");
  cmd_cmp->add_option("--input", cmp_opts.input, "Scores CSV (large samples)")
      ->required();
  cmd_cmp->add_option("--m", cmp_opts.m, "Scale size (default 5)");
  cmd_cmp->add_option("--n-small", cmp_n_small, "Subsample sizes")
      ->delimiter(',');
  cmd_cmp->add_option("--mc", cmp_mc, "Bootstrap replicates (default 10000)");
  cmd_cmp->add_option("--variant", cmp_variant, "unmodified|corrected");
  cmd_cmp->add_option("--seed", cmp_opts.seed, "RNG seed");
  cmd_cmp->add_option("--grid-step", cmp_grid_step, "GSD grid step");
  cmd_cmp->add_option("--hist-out", cmp_hist_out,
                      "Write diff histograms to this CSV");
  cmd_cmp->add_option("--bins", cmp_bins, "Histogram bin count (default 40)");
  cmd_cmp->add_option("--out", cmp_opts.out, "Output file (default stdout)");

  // ---- matrix-fit ----------------------------------------------------------
  CommonOpts mx_opts;
  double mx_tol = 1e-8;
  int mx_sweeps = 500;
  auto* cmd_mx = app.add_subcommand(
      "matrix-fit", "Joint per-stimulus psi / per-rater rho MLE");
  cmd_mx->add_option("--input", mx_opts.input,
                     "Scores CSV with rater ids on every row")
      ->required();
  cmd_mx->add_option("--m", mx_opts.m, "Scale size (default 5)");
  cmd_mx->add_option("--tol", mx_tol, "Sweep convergence tolerance");
  cmd_mx->add_option("--max-sweeps", mx_sweeps, "Sweep cap (default 500)");
  cmd_mx->add_option("--out", mx_opts.out, "Output file (default stdout)");

  // ---- simulate -------------------------------------------------------------
  double sim_psi = 3.0;
  double sim_rho = 0.8;
  int sim_m = 5;
  int sim_n = 24;
  std::uint64_t sim_seed = 1;
  std::string sim_stimulus = "s1";
  std::string sim_out;
  auto* cmd_sim =
      app.add_subcommand("simulate", "Draw a sample and emit a scores CSV");
  cmd_sim->add_option("--psi", sim_psi, "Expected value")->required();
  cmd_sim->add_option("--rho", sim_rho, "Confidence parameter")->required();
  cmd_sim->add_option("--m", sim_m, "Scale size (default 5)");
  cmd_sim->add_option("-n,--n", sim_n, "Number of draws")->required();
  cmd_sim->add_option("--seed", sim_seed, "RNG seed");
  cmd_sim->add_option("--stimulus-id", sim_stimulus, "Stimulus id to emit");
  cmd_sim->add_option("--out", sim_out, "Output file (default stdout)");

  // ---- rmsd-study -----------------------------------------------------------
  std::string rs_mode = "1d";
  int rs_m = 5;
  std::vector<int> rs_sizes{12, 24, 50, 200};
  int rs_replicates = 1000;
  std::vector<double> rs_psi_grid;
  std::vector<double> rs_rho_grid;
  std::vector<double> rs_probes;
  bool rs_probe_rho = false;
  std::uint64_t rs_seed = 1;
  double rs_grid_step = 0.01;
  std::string rs_out;
  auto* cmd_rs = app.add_subcommand(
      "rmsd-study", "Estimation-risk study (1-D or matrix model)");
  cmd_rs->add_option("--mode", rs_mode, "1d|matrix");
  cmd_rs->add_option("--m", rs_m, "Scale size (default 5)");
  cmd_rs->add_option("--sizes", rs_sizes, "Sample sizes")->delimiter(',');
  cmd_rs->add_option("--replicates", rs_replicates,
                     "Replicates per cell (default 1000)");
  cmd_rs->add_option("--psi-grid", rs_psi_grid, "1d: psi probe values")
      ->delimiter(',');
  cmd_rs->add_option("--rho-grid", rs_rho_grid, "1d: rho probe values")
      ->delimiter(',');
  cmd_rs->add_option("--probes", rs_probes, "matrix: probed parameter values")
      ->delimiter(',');
  cmd_rs->add_flag("--probe-rho", rs_probe_rho,
                   "matrix: probe one rater's rho instead of one psi");
  cmd_rs->add_option("--grid-step", rs_grid_step, "1d: estimator grid step");
  cmd_rs->add_option("--seed", rs_seed, "RNG seed");
  cmd_rs->add_option("--out", rs_out, "Output file (default stdout)");

  // ---- probit-fit -----------------------------------------------------------
  CommonOpts pb_opts;
  gsd::ProbitGridConfig pb_grid;
  auto* cmd_pb = app.add_subcommand("probit-fit",
                                    "Ordered-probit grid MLE per stimulus");
  cmd_pb->add_option("--input", pb_opts.input, "Scores CSV")->required();
  cmd_pb->add_option("--m", pb_opts.m, "Scale size (default 5)");
  cmd_pb->add_option("--mu-min", pb_grid.mu_min, "Grid box (default 0)");
  cmd_pb->add_option("--mu-max", pb_grid.mu_max, "Grid box (default M+1)");
  cmd_pb->add_option("--mu-step", pb_grid.mu_step, "Grid step (default 0.01)");
  cmd_pb->add_option("--sigma-min", pb_grid.sigma_min, "Grid box (default 0.01)");
  cmd_pb->add_option("--sigma-max", pb_grid.sigma_max, "Grid box (default 5)");
  cmd_pb->add_option("--sigma-step", pb_grid.sigma_step,
                     "Grid step (default 0.01)");
  cmd_pb->add_option("--out", pb_opts.out, "Output file (default stdout)");

  // ---- pp-plot --------------------------------------------------------------
  std::string pp_input;
  double pp_alpha = 0.05;
  std::string pp_bound = "binomial";
  int pp_grid_points = 101;
  std::string pp_out;
  auto* cmd_pp = app.add_subcommand(
      "pp-plot", "Ecdf of a p-value list with the null upper bound");
  cmd_pp->add_option("--input", pp_input, "CSV with one p-value per line")
      ->required();
  cmd_pp->add_option("--alpha", pp_alpha, "Bound level (default 0.05)");
  cmd_pp->add_option("--bound", pp_bound, "binomial|dkw");
  cmd_pp->add_option("--grid-points", pp_grid_points,
                     "Evaluation grid size (default 101)");
  cmd_pp->add_option("--out", pp_out, "Output file (default stdout)");

  // ---- envelope ---------------------------------------------------------------
  int env_m = 5;
  double env_psi_step = 0.01;
  bool env_probit_map = false;
  std::vector<double> env_mu_grid;
  std::vector<double> env_sigma_grid{0.1, 0.3, 0.5, 1.0, 2.0};
  int env_feasible_n = 0;
  std::string env_out;
  auto* cmd_env = app.add_subcommand(
      "envelope",
      "Variance envelope, probit moment mapping, or feasible-region data");
  cmd_env->add_option("--m", env_m, "Scale size (default 5)");
  cmd_env->add_option("--psi-step", env_psi_step, "psi resolution");
  cmd_env->add_flag("--probit-map", env_probit_map,
                    "Emit (mu, sigma) -> (E(U), V(U)) mapping data instead");
  cmd_env->add_option("--mu-grid", env_mu_grid, "probit-map: mu values")
      ->delimiter(',');
  cmd_env->add_option("--sigma-grid", env_sigma_grid,
                      "probit-map: sigma values")
      ->delimiter(',');
  cmd_env->add_option("--feasible-n", env_feasible_n,
                      "Emit the p_max-feasible (psi, rho) region for this n");
  cmd_env->add_option("--out", env_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cmd_fit) {
      const auto parsed = gsd::parse_scores_csv(fit_opts.input, fit_opts.m);
      nlohmann::json results = nlohmann::json::array();
      for (std::size_t j = 0; j < parsed.samples.size(); ++j) {
        nlohmann::json row =
            gsd::to_json(run_fit(parsed.samples[j], fit_method, fit_grid_step));
        row["stimulus_id"] = parsed.stimulus_ids[j];
        results.push_back(std::move(row));
      }
      const auto report = gsd::make_report(
          "fit",
          {{"m", fit_opts.m}, {"method", fit_method},
           {"grid_step", fit_grid_step}, {"input", fit_opts.input}},
          std::move(results));
      write_output(fit_opts.out, dump_report(report));
    } else if (*cmd_gof) {
      const auto parsed = gsd::parse_scores_csv(gof_opts.input, gof_opts.m);
      gsd::GofConfig config;
      config.grid = {gof_grid_step, gof_grid_step};
      config.constrained = !gof_unconstrained;
      const gsd::GofModel model = gof_model == "probit"
                                      ? gsd::GofModel::OrderedProbit
                                      : gsd::GofModel::Gsd;
      if (gof_model != "gsd" && gof_model != "probit")
        throw CLI::ValidationError("--model", "unknown model '" + gof_model + "'");
      nlohmann::json results = nlohmann::json::array();
      std::vector<double> p_values;
      for (std::size_t j = 0; j < parsed.samples.size(); ++j) {
        const auto gof = gsd::bootstrap_g_test(
            parsed.samples[j], model, gof_mc,
            gsd::derive_stream(gof_opts.seed, j), config);
        p_values.push_back(gof.p_value);
        nlohmann::json row = gsd::to_json(gof);
        row["stimulus_id"] = parsed.stimulus_ids[j];
        results.push_back(std::move(row));
      }
      if (!gof_pp_out.empty()) {
        const auto curve = gsd::pp_plot_data(p_values, gof_alpha);
        std::ostringstream csv;
        csv << "x,ecdf,bound\n";
        for (const auto& pt : curve)
          csv << pt.x << ',' << pt.ecdf << ',' << pt.bound << '\n';
        write_output(gof_pp_out, csv.str());
      }
      const auto report = gsd::make_report(
          "gof",
          {{"m", gof_opts.m}, {"model", gof_model}, {"mc", gof_mc},
           {"seed", gof_opts.seed}, {"grid_step", gof_grid_step},
           {"constrained", !gof_unconstrained}, {"input", gof_opts.input}},
          std::move(results));
      write_output(gof_opts.out, dump_report(report));
    } else if (*cmd_sample) {
      const auto scores = gsd::sample(
          gsd::GsdParams(sample_psi, sample_rho, sample_m), sample_n,
          sample_seed);
      std::ostringstream out;
      for (std::size_t i = 0; i < scores.size(); ++i) {
        if (i > 0) out << ',';
        out << scores[i];
      }
      out << '\n';
      write_output(sample_out, out.str());
    } else if (*cmd_cmp) {
      const auto parsed = gsd::parse_scores_csv(cmp_opts.input, cmp_opts.m);
      const gsd::CompareVariant variant =
          cmp_variant == "corrected" ? gsd::CompareVariant::Corrected
                                     : gsd::CompareVariant::Unmodified;
      if (cmp_variant != "unmodified" && cmp_variant != "corrected")
        throw CLI::ValidationError("--variant",
                                   "unknown variant '" + cmp_variant + "'");
      const auto batch = gsd::compare_batch(
          parsed.samples, cmp_n_small, cmp_mc, variant, cmp_opts.seed,
          {cmp_grid_step, cmp_grid_step}, cmp_bins);
      nlohmann::json results = nlohmann::json::array();
      for (std::size_t s = 0; s < parsed.samples.size(); ++s) {
        for (std::size_t t = 0; t < cmp_n_small.size(); ++t) {
          nlohmann::json row =
              gsd::to_json(batch.results[s * cmp_n_small.size() + t]);
          row["stimulus_id"] = parsed.stimulus_ids[s];
          results.push_back(std::move(row));
        }
      }
      if (!cmp_hist_out.empty()) {
        std::ostringstream csv;
        csv << "n_small,bin_lo,bin_hi,total,insignificant\n";
        for (const auto& h : batch.histograms)
          for (std::size_t b = 0; b + 1 < h.bin_edges.size(); ++b)
            csv << h.n_small << ',' << h.bin_edges[b] << ',' << h.bin_edges[b + 1]
                << ',' << h.total[b] << ',' << h.insignificant[b] << '\n';
        write_output(cmp_hist_out, csv.str());
      }
      const auto report = gsd::make_report(
          "compare",
          {{"m", cmp_opts.m}, {"n_small", cmp_n_small}, {"mc", cmp_mc},
           {"variant", cmp_variant}, {"seed", cmp_opts.seed},
           {"grid_step", cmp_grid_step}, {"input", cmp_opts.input}},
          std::move(results));
      write_output(cmp_opts.out, dump_report(report));
    } else if (*cmd_mx) {
      const auto parsed = gsd::parse_scores_csv(mx_opts.input, mx_opts.m);
      if (!parsed.matrix)
        throw gsd::csv_error(mx_opts.input +
                             ": matrix-fit needs a rater_id on every row");
      const auto fit =
          gsd::fit_matrix(*parsed.matrix, {mx_tol, mx_sweeps});
      nlohmann::json psi = nlohmann::json::object();
      for (std::size_t j = 0; j < parsed.stimulus_ids.size(); ++j)
        psi[parsed.stimulus_ids[j]] = fit.psi[j];
      nlohmann::json rho = nlohmann::json::object();
      for (std::size_t i = 0; i < parsed.rater_ids.size(); ++i)
        rho[parsed.rater_ids[i]] = fit.rho[i];
      const auto report = gsd::make_report(
          "matrix-fit",
          {{"m", mx_opts.m}, {"tol", mx_tol}, {"max_sweeps", mx_sweeps},
           {"input", mx_opts.input}},
          {{"psi", std::move(psi)}, {"rho", std::move(rho)},
           {"log_likelihood", fit.log_likelihood}, {"sweeps", fit.sweeps},
           {"converged", fit.converged}});
      write_output(mx_opts.out, dump_report(report));
    } else if (*cmd_sim) {
      const auto scores = gsd::sample(gsd::GsdParams(sim_psi, sim_rho, sim_m),
                                      sim_n, sim_seed);
      std::ostringstream csv;
      csv << "stimulus_id,rater_id,score\n";
      for (int s : scores) csv << sim_stimulus << ",," << s << '\n';
      write_output(sim_out, csv.str());
    } else if (*cmd_rs) {
      std::ostringstream csv;
      if (rs_mode == "1d") {
        gsd::RmsdStudyConfig config;
        config.m = rs_m;
        config.sizes = rs_sizes;
        config.replicates = rs_replicates;
        config.psi_probes = rs_psi_grid;
        config.rho_probes = rs_rho_grid;
        config.grid = {rs_grid_step, rs_grid_step};
        config.seed = rs_seed;
        if (config.psi_probes.empty())
          config.psi_probes = {1.1, 1.6, 2.1, 2.6, 3.1, 3.6, 4.1, 4.6};
        if (config.rho_probes.empty())
          config.rho_probes = {0.05, 0.3, 0.55, 0.8, 0.95};
        csv << "n,psi,rho,rmsd_psi,rmsd_rho\n";
        for (const auto& cell : gsd::rmsd_study_1d(config))
          csv << cell.n << ',' << cell.psi << ',' << cell.rho << ','
              << cell.rmsd_psi << ',' << cell.rmsd_rho << '\n';
      } else if (rs_mode == "matrix") {
        gsd::MatrixRmsdConfig config;
        config.m = rs_m;
        config.sizes = rs_sizes;
        config.replicates = rs_replicates;
        config.probe_psi = !rs_probe_rho;
        config.probes = rs_probes;
        config.seed = rs_seed;
        if (config.probes.empty())
          config.probes = config.probe_psi
                              ? std::vector<double>{1.5, 2.5, 3.5, 4.5}
                              : std::vector<double>{0.1, 0.4, 0.7, 0.9};
        csv << "n,probe,kind,rmsd\n";
        for (const auto& cell : gsd::rmsd_study_matrix(config))
          csv << cell.n << ',' << cell.probe << ','
              << (config.probe_psi ? "psi" : "rho") << ',' << cell.rmsd << '\n';
      } else {
        throw CLI::ValidationError("--mode", "unknown mode '" + rs_mode + "'");
      }
      write_output(rs_out, csv.str());
    } else if (*cmd_pb) {
      const auto parsed = gsd::parse_scores_csv(pb_opts.input, pb_opts.m);
      const gsd::ProbitGrid grid(pb_opts.m, pb_grid);
      nlohmann::json results = nlohmann::json::array();
      for (std::size_t j = 0; j < parsed.samples.size(); ++j) {
        nlohmann::json row = gsd::to_json(grid.fit(parsed.samples[j]));
        row["stimulus_id"] = parsed.stimulus_ids[j];
        results.push_back(std::move(row));
      }
      const auto report = gsd::make_report(
          "probit-fit", {{"m", pb_opts.m}, {"input", pb_opts.input}},
          std::move(results));
      write_output(pb_opts.out, dump_report(report));
    } else if (*cmd_pp) {
      const auto p_values = gsd::parse_pvalues_csv(pp_input);
      const gsd::PpBound bound =
          pp_bound == "dkw" ? gsd::PpBound::Dkw : gsd::PpBound::PointwiseBinomial;
      if (pp_bound != "binomial" && pp_bound != "dkw")
        throw CLI::ValidationError("--bound", "unknown bound '" + pp_bound + "'");
      const auto curve =
          gsd::pp_plot_data(p_values, pp_alpha, bound, pp_grid_points);
      std::ostringstream csv;
      csv << "x,ecdf,bound\n";
      for (const auto& pt : curve)
        csv << pt.x << ',' << pt.ecdf << ',' << pt.bound << '\n';
      write_output(pp_out, csv.str());
    } else if (*cmd_env) {
      std::ostringstream csv;
      if (env_probit_map) {
        if (env_mu_grid.empty())
          for (double mu = 0.0; mu <= env_m + 1.0 + 1e-9; mu += 0.05)
            env_mu_grid.push_back(mu);
        csv << "mu,sigma,e_u,v_u\n";
        for (double sigma : env_sigma_grid)
          for (double mu : env_mu_grid) {
            const auto [e_u, v_u] = gsd::probit_induced_moments(
                gsd::ProbitParams(mu, sigma, env_m));
            csv << mu << ',' << sigma << ',' << e_u << ',' << v_u << '\n';
          }
      } else if (env_feasible_n > 0) {
        const gsd::GsdGrid grid(env_m);
        const double cap = 1.0 - 1.0 / static_cast<double>(env_feasible_n);
        csv << "psi,rho,p_max,feasible\n";
        for (std::size_t g = 0; g < grid.size(); ++g) {
          const auto params = grid.params_at(g);
          csv << params.psi() << ',' << params.rho() << ',' << grid.p_max_at(g)
              << ',' << (grid.p_max_at(g) <= cap ? 1 : 0) << '\n';
        }
      } else {
        csv << "psi,v_min,v_max,v_bin,c\n";
        for (double psi = 1.0; psi <= env_m + 1e-9; psi += env_psi_step) {
          const auto env = gsd::variance_envelope(std::min(psi, double(env_m)),
                                                  env_m);
          csv << psi << ',' << env.v_min << ',' << env.v_max << ',' << env.v_bin
              << ',' << env.c << '\n';
        }
      }
      write_output(env_out, csv.str());
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "gsd: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gsd::csv_error& e) {
    std::cerr << "gsd: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "gsd: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
