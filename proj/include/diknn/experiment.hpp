#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "diknn/directed_information.hpp"
#include "diknn/generators.hpp"
#include "diknn/markov_order.hpp"
#include "diknn/significance.hpp"

namespace diknn {

struct OrderPolicy {
  OrderMethod method = OrderMethod::Fixed;
  int fixed_m = 2;                      // used when method == Fixed
  std::vector<int> candidates{1, 2, 3, 4, 5};
};

struct SignificanceSettings {
  int L = 19;
  double epsilon_p = 0.05;
};

// Full sweep experiment: a generator template, one swept parameter, a trial
// count, and per-trial estimation settings.  Runs are deterministic given
// base_seed, independent of the worker count.
struct ExperimentSpec {
  GeneratorSpec generator;  // template; the swept parameter is overridden
  std::string sweep_param;  // beta1 | beta2 | beta | gamma
  std::vector<double> sweep_values;
  std::string sweep_link;   // "", "beta2=beta1", "beta2=1-beta1"
  int trials = 1;
  std::size_t n = 3000;
  std::vector<DIMethod> methods{DIMethod::KSG, DIMethod::GOV};
  std::vector<Direction> directions{Direction::XtoY, Direction::YtoX};
  OrderPolicy order_policy;
  std::optional<SignificanceSettings> significance;
  SurrogateKind surrogate_kind = SurrogateKind::Permutation;
  int k = 8;
  std::uint64_t base_seed = 0;
  std::filesystem::path output_dir = ".";
  bool plot = false;
  bool timings = false;

  static ExperimentSpec from_json_file(const std::filesystem::path& path);
  static ExperimentSpec from_json_text(const std::string& text);
  void validate() const;
};

struct ResultRow {
  double sweep_value = 0.0;
  int trial = 0;
  DIMethod method = DIMethod::KSG;
  Direction direction = Direction::XtoY;
  double di_nats = 0.0;
  double di_bits = 0.0;
  int m_used = 0;
  std::optional<double> p_value;
  std::optional<bool> significant;
  std::optional<double> runtime_ms;
};

struct SummaryRow {
  double sweep_value = 0.0;
  DIMethod method = DIMethod::KSG;
  Direction direction = Direction::XtoY;
  double mean_nats = 0.0;
  double std_nats = 0.0;
  double mean_bits = 0.0;
  double std_bits = 0.0;
  int trials = 0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;       // sorted by (grid index, trial, ...)
  std::vector<SummaryRow> summary;
  bool interrupted = false;
};

// Cooperative stop flag checked between tasks (wired to SIGINT by the CLI
// so partial results still reach disk).
extern std::atomic<bool> g_stop_requested;

ExperimentResult run_experiment(const ExperimentSpec& spec, int threads);

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

void write_results_csv(const std::filesystem::path& path,
                       const std::vector<ResultRow>& rows);
void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<SummaryRow>& rows);

// Worker count: DIKNN_THREADS when set, otherwise hardware parallelism.
int default_thread_count();

}  // namespace diknn
