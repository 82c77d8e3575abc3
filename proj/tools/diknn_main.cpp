#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "diknn/csv.hpp"
#include "diknn/directed_information.hpp"
#include "diknn/experiment.hpp"
#include "diknn/generators.hpp"
#include "diknn/markov_order.hpp"
#include "diknn/significance.hpp"
#include "diknn/svg_plot.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInsufficientData = 3;
constexpr int kExitNumerical = 4;

void on_sigint(int) { diknn::g_stop_requested.store(true); }

json estimate_to_json(const diknn::DIEstimate& e, const std::string& units) {
  json j{
      {"direction", diknn::to_string(e.direction)},
      {"method", diknn::to_string(e.method)},
      {"di_nats", e.value},
      {"di_bits", e.bits()},
      {"units", units},
      {"value", units == "bits" ? e.bits() : e.value},
      {"m", e.m},
      {"k", e.k},
      {"n_effective", e.n_effective},
      {"term_breakdown",
       {{"h_ypast_y", e.terms.h_ypast_y},
        {"h_ypast", e.terms.h_ypast},
        {"h_joint", e.terms.h_joint},
        {"h_ypast_xpast", e.terms.h_ypast_xpast}}},
  };
  return j;
}

int cmd_estimate(const std::string& input, const std::string& method_str,
                 const std::string& m_str, int k,
                 const std::string& direction_str, const std::string& units,
                 int sig_l, double sig_eps, std::uint64_t seed) {
  const diknn::SeriesPair pair = diknn::read_series_csv(fs::path(input));
  const diknn::DIMethod method = method_str == "GOV" ? diknn::DIMethod::GOV
                                                     : diknn::DIMethod::KSG;
  std::vector<diknn::Direction> dirs;
  if (direction_str == "both" || direction_str == "x->y") {
    dirs.push_back(diknn::Direction::XtoY);
  }
  if (direction_str == "both" || direction_str == "y->x") {
    dirs.push_back(diknn::Direction::YtoX);
  }

  json out = json::array();
  for (diknn::Direction dir : dirs) {
    int m;
    if (m_str == "auto" || m_str == "auto-joint" || m_str == "auto-ragwitz") {
      const diknn::OrderMethod om = m_str == "auto-ragwitz"
                                        ? diknn::OrderMethod::Ragwitz
                                        : diknn::OrderMethod::Joint;
      const diknn::SeriesPair oriented =
          dir == diknn::Direction::XtoY ? pair : pair.reversed();
      const std::vector<int> candidates{1, 2, 3, 4, 5};
      m = diknn::estimate_order(oriented, candidates, k, om).m_hat;
    } else {
      m = std::stoi(m_str);
    }
    const auto est = diknn::estimate_di(pair, method, dir, m, k);
    json j = estimate_to_json(est, units);
    if (sig_l > 0) {
      const auto rep = diknn::significance_test(pair, method, dir, m, k, sig_l,
                                                sig_eps, seed);
      j["p_value"] = rep.p_value;
      j["significant"] = rep.significant;
      j["zeroed_value"] = rep.zeroed_value;
      j["surrogate_count"] = rep.surrogates.size();
    }
    out.push_back(std::move(j));
  }
  std::cout << out.dump(2) << std::endl;
  return 0;
}

int cmd_order(const std::string& input, std::vector<int> candidates, int k,
              const std::string& method_str) {
  const diknn::SeriesPair pair = diknn::read_series_csv(fs::path(input));
  const diknn::OrderMethod method = method_str == "ragwitz"
                                        ? diknn::OrderMethod::Ragwitz
                                        : diknn::OrderMethod::Joint;
  const auto sel = diknn::estimate_order(pair, candidates, k, method);
  json losses = json::object();
  for (const auto& [m, loss] : sel.losses) losses[std::to_string(m)] = loss;
  const json out{{"m_hat", sel.m_hat},
                 {"losses", losses},
                 {"method", diknn::to_string(sel.method)}};
  std::cout << out.dump(2) << std::endl;
  return 0;
}

int cmd_experiment(const std::string& spec_path, int threads) {
  const auto spec = diknn::ExperimentSpec::from_json_file(spec_path);
  if (threads <= 0) threads = diknn::default_thread_count();
  const auto result = diknn::run_experiment(spec, threads);
  fs::create_directories(spec.output_dir);
  diknn::write_results_csv(spec.output_dir / "results.csv", result.rows);
  diknn::write_summary_csv(spec.output_dir / "summary.csv", result.summary);
  if (spec.plot) {
    diknn::write_sweep_svg(spec.output_dir / "sweep.svg", result.summary,
                           std::string(diknn::to_string(spec.generator.kind)) +
                               " sweep over " + spec.sweep_param);
  }
  if (result.interrupted) {
    std::cerr << "interrupted; partial results written to "
              << spec.output_dir.string() << std::endl;
    return 1;
  }
  std::cerr << "wrote " << result.rows.size() << " rows to "
            << spec.output_dir.string() << std::endl;
  return 0;
}

int cmd_generate(const std::string& kind, double beta1, double beta2,
                 double beta, double gamma, std::size_t n, std::uint64_t seed,
                 const std::string& output) {
  diknn::GeneratorSpec spec;
  spec.kind = diknn::generator_kind_from_string(kind);
  spec.beta1 = beta1;
  spec.beta2 = beta2;
  spec.beta = beta;
  spec.gamma = gamma;
  spec.n = n;
  spec.seed = seed;
  const diknn::SeriesPair pair = diknn::generate(spec);
  if (output.empty() || output == "-") {
    diknn::write_series_csv(std::cout, pair);
  } else {
    diknn::write_series_csv(fs::path(output), pair);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_sigint);

  CLI::App app{"k-NN estimation of directed information between time series"};
  app.require_subcommand(1);

  // estimate
  std::string est_input, est_method = "KSG", est_m = "auto", est_dir = "both",
              est_units = "nats";
  int est_k = 8, est_sig_l = 0;
  double est_sig_eps = 0.05;
  std::uint64_t est_seed = 0;
  auto* est = app.add_subcommand("estimate", "Estimate DI from a two-column CSV");
  est->add_option("input", est_input, "input CSV with columns x,y")->required();
  est->add_option("--method", est_method, "KSG or GOV")
      ->check(CLI::IsMember({"KSG", "GOV"}));
  est->add_option("-m,--order", est_m,
                  "Markov order: integer, auto, auto-joint, or auto-ragwitz");
  est->add_option("-k", est_k, "neighbor count (default 8)");
  est->add_option("--direction", est_dir, "x->y, y->x, or both")
      ->check(CLI::IsMember({"x->y", "y->x", "both"}));
  est->add_option("--units", est_units, "nats or bits")
      ->check(CLI::IsMember({"nats", "bits"}));
  est->add_option("--significance-l", est_sig_l,
                  "surrogate count; 0 disables the shuffle test");
  est->add_option("--significance-eps", est_sig_eps, "significance level");
  est->add_option("--seed", est_seed, "seed for the surrogate stream");

  // order
  std::string ord_input, ord_method = "joint";
  std::vector<int> ord_candidates{1, 2, 3, 4, 5};
  int ord_k = 8;
  auto* ord = app.add_subcommand("order", "Select the Markov order from a CSV");
  ord->add_option("input", ord_input, "input CSV with columns x,y")->required();
  ord->add_option("--candidates", ord_candidates, "candidate orders");
  ord->add_option("-k", ord_k, "prediction neighbor count");
  ord->add_option("--method", ord_method, "joint or ragwitz")
      ->check(CLI::IsMember({"joint", "ragwitz"}));

  // experiment
  std::string exp_spec;
  int exp_threads = 0;
  auto* exp = app.add_subcommand("experiment", "Run a sweep experiment spec");
  exp->add_option("spec", exp_spec, "experiment spec JSON")->required();
  exp->add_option("--threads", exp_threads,
                  "worker count (default: DIKNN_THREADS or hardware)");

  // generate
  std::string gen_kind = "linear", gen_output;
  double gen_beta1 = 0.0, gen_beta2 = 0.0, gen_beta = 0.0, gen_gamma = 0.0;
  std::size_t gen_n = 3000;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("generate", "Generate a synthetic series pair");
  gen->add_option("--kind", gen_kind, "linear, quadratic, henon, or sigmoid")
      ->check(CLI::IsMember({"linear", "quadratic", "henon", "sigmoid"}));
  gen->add_option("--beta1", gen_beta1, "first coupling coefficient");
  gen->add_option("--beta2", gen_beta2, "second coupling coefficient");
  gen->add_option("--beta", gen_beta, "coupling strength (henon, sigmoid)");
  gen->add_option("--gamma", gen_gamma, "observation noise gain (henon)");
  gen->add_option("--n", gen_n, "output length");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("-o,--output", gen_output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (est->parsed()) {
      return cmd_estimate(est_input, est_method, est_m, est_k, est_dir,
                          est_units, est_sig_l, est_sig_eps, est_seed);
    }
    if (ord->parsed()) {
      return cmd_order(ord_input, ord_candidates, ord_k, ord_method);
    }
    if (exp->parsed()) return cmd_experiment(exp_spec, exp_threads);
    if (gen->parsed()) {
      return cmd_generate(gen_kind, gen_beta1, gen_beta2, gen_beta, gen_gamma,
                          gen_n, gen_seed, gen_output);
    }
  } catch (const diknn::InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitInsufficientData;
  } catch (const diknn::UsageError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitNumerical;
  }
  return 0;
}
