#include "diknn/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "diknn/csv.hpp"

namespace diknn {

using nlohmann::json;

std::atomic<bool> g_stop_requested{false};

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw UsageError("spec: unknown field '" + key + "' in " + where);
    }
  }
}

DIMethod method_from_string(const std::string& s) {
  if (s == "KSG") return DIMethod::KSG;
  if (s == "GOV") return DIMethod::GOV;
  throw UsageError("spec: unknown method '" + s + "'");
}

Direction direction_from_string(const std::string& s) {
  if (s == "X->Y") return Direction::XtoY;
  if (s == "Y->X") return Direction::YtoX;
  throw UsageError("spec: unknown direction '" + s + "'");
}

}  // namespace

ExperimentSpec ExperimentSpec::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("spec: invalid JSON: ") + e.what());
  }
  reject_unknown(j, {"spec_version", "generator", "sweep", "trials", "n",
                     "methods", "directions", "order_policy", "significance",
                     "surrogate", "k", "base_seed", "output_dir", "plot",
                     "timings"},
                 "top level");
  if (!j.contains("spec_version") || j.at("spec_version").get<int>() != 1) {
    throw UsageError("spec: missing or unsupported spec_version (expected 1)");
  }

  ExperimentSpec spec;

  const json& g = j.at("generator");
  reject_unknown(g, {"kind", "beta1", "beta2", "beta", "gamma"}, "generator");
  spec.generator.kind = generator_kind_from_string(g.at("kind").get<std::string>());
  spec.generator.beta1 = g.value("beta1", 0.0);
  spec.generator.beta2 = g.value("beta2", 0.0);
  spec.generator.beta = g.value("beta", 0.0);
  spec.generator.gamma = g.value("gamma", 0.0);

  const json& sw = j.at("sweep");
  reject_unknown(sw, {"param", "values", "link"}, "sweep");
  spec.sweep_param = sw.at("param").get<std::string>();
  spec.sweep_values = sw.at("values").get<std::vector<double>>();
  spec.sweep_link = sw.value("link", "");

  spec.trials = j.at("trials").get<int>();
  spec.n = j.at("n").get<std::size_t>();
  spec.generator.n = spec.n;

  if (j.contains("methods")) {
    spec.methods.clear();
    for (const auto& m : j.at("methods")) {
      spec.methods.push_back(method_from_string(m.get<std::string>()));
    }
  }
  if (j.contains("directions")) {
    spec.directions.clear();
    for (const auto& d : j.at("directions")) {
      spec.directions.push_back(direction_from_string(d.get<std::string>()));
    }
  }

  const json& op = j.at("order_policy");
  reject_unknown(op, {"type", "m", "candidates"}, "order_policy");
  const std::string type = op.at("type").get<std::string>();
  if (type == "fixed") {
    spec.order_policy.method = OrderMethod::Fixed;
    spec.order_policy.fixed_m = op.at("m").get<int>();
  } else if (type == "auto-joint" || type == "auto-ragwitz") {
    spec.order_policy.method =
        type == "auto-joint" ? OrderMethod::Joint : OrderMethod::Ragwitz;
    if (op.contains("candidates")) {
      spec.order_policy.candidates = op.at("candidates").get<std::vector<int>>();
    }
  } else {
    throw UsageError("spec: order_policy.type must be fixed, auto-joint, or "
                     "auto-ragwitz");
  }

  if (j.contains("significance") && !j.at("significance").is_null()) {
    const json& sig = j.at("significance");
    reject_unknown(sig, {"L", "epsilon_p"}, "significance");
    spec.significance = SignificanceSettings{sig.at("L").get<int>(),
                                             sig.at("epsilon_p").get<double>()};
  }
  if (j.contains("surrogate")) {
    const std::string s = j.at("surrogate").get<std::string>();
    if (s == "permutation") spec.surrogate_kind = SurrogateKind::Permutation;
    else if (s == "circular-shift") spec.surrogate_kind = SurrogateKind::CircularShift;
    else if (s == "resample") spec.surrogate_kind = SurrogateKind::Resample;
    else throw UsageError("spec: unknown surrogate '" + s + "'");
  }

  spec.k = j.value("k", 8);
  spec.base_seed = j.value("base_seed", std::uint64_t{0});
  spec.output_dir = j.value("output_dir", std::string{"."});
  spec.plot = j.value("plot", false);
  spec.timings = j.value("timings", false);
  spec.validate();
  return spec;
}

ExperimentSpec ExperimentSpec::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open spec " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json_text(text);
}

void ExperimentSpec::validate() const {
  if (trials < 1) throw UsageError("spec: trials must be >= 1");
  if (sweep_values.empty()) throw UsageError("spec: sweep grid is empty");
  if (methods.empty()) throw UsageError("spec: no methods selected");
  if (directions.empty()) throw UsageError("spec: no directions selected");
  if (k < 1) throw UsageError("spec: k must be >= 1");
  const std::set<std::string> params{"beta1", "beta2", "beta", "gamma"};
  if (!params.contains(sweep_param)) {
    throw UsageError("spec: sweep.param must be beta1, beta2, beta, or gamma");
  }
  if (!sweep_link.empty() && sweep_link != "beta2=beta1" &&
      sweep_link != "beta2=1-beta1") {
    throw UsageError("spec: sweep.link must be beta2=beta1 or beta2=1-beta1");
  }
  if (order_policy.method == OrderMethod::Fixed) {
    if (order_policy.fixed_m < 1 || order_policy.fixed_m > kMaxMarkovOrder) {
      throw UsageError("spec: fixed m outside [1, 20]");
    }
  } else if (order_policy.candidates.empty()) {
    throw UsageError("spec: empty order candidate set");
  }
}

namespace {

GeneratorSpec instantiate(const ExperimentSpec& spec, double value,
                          std::uint64_t seed) {
  GeneratorSpec g = spec.generator;
  if (spec.sweep_param == "beta1") g.beta1 = value;
  else if (spec.sweep_param == "beta2") g.beta2 = value;
  else if (spec.sweep_param == "beta") g.beta = value;
  else g.gamma = value;
  if (spec.sweep_link == "beta2=beta1") g.beta2 = g.beta1;
  else if (spec.sweep_link == "beta2=1-beta1") g.beta2 = 1.0 - g.beta1;
  g.seed = seed;
  return g;
}

std::vector<ResultRow> run_task(const ExperimentSpec& spec,
                                std::size_t grid_idx, int trial) {
  const double value = spec.sweep_values[grid_idx];
  const std::uint64_t trial_seed =
      derive_seed(spec.base_seed, {grid_idx, static_cast<std::uint64_t>(trial)});
  const SeriesPair pair = generate(instantiate(spec, value, trial_seed));

  std::vector<ResultRow> rows;
  for (std::size_t di = 0; di < spec.directions.size(); ++di) {
    const Direction dir = spec.directions[di];
    int m = spec.order_policy.fixed_m;
    if (spec.order_policy.method != OrderMethod::Fixed) {
      const SeriesPair oriented =
          dir == Direction::XtoY ? pair : pair.reversed();
      m = estimate_order(oriented, spec.order_policy.candidates, spec.k,
                         spec.order_policy.method)
              .m_hat;
    }
    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
      const DIMethod method = spec.methods[mi];
      const auto t0 = std::chrono::steady_clock::now();
      ResultRow row;
      row.sweep_value = value;
      row.trial = trial;
      row.method = method;
      row.direction = dir;
      row.m_used = m;
      if (spec.significance) {
        const auto rep = significance_test(
            pair, method, dir, m, spec.k, spec.significance->L,
            spec.significance->epsilon_p,
            derive_seed(trial_seed, {di, mi}), spec.surrogate_kind);
        row.di_nats = rep.observed;
        row.p_value = rep.p_value;
        row.significant = rep.significant;
      } else {
        row.di_nats = estimate_di(pair, method, dir, m, spec.k).value;
      }
      row.di_bits = row.di_nats * kNatsToBits;
      if (spec.timings) {
        const auto t1 = std::chrono::steady_clock::now();
        row.runtime_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace

int default_thread_count() {
  if (const char* env = std::getenv("DIKNN_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

ExperimentResult run_experiment(const ExperimentSpec& spec, int threads) {
  spec.validate();
  const std::size_t n_tasks = spec.sweep_values.size() *
                              static_cast<std::size_t>(spec.trials);
  std::vector<std::vector<ResultRow>> slots(n_tasks);
  std::vector<char> done(n_tasks, 0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_msg;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      if (g_stop_requested.load() || failed.load()) return;
      const std::size_t t = next.fetch_add(1);
      if (t >= n_tasks) return;
      const std::size_t grid_idx = t / static_cast<std::size_t>(spec.trials);
      const int trial = static_cast<int>(t % static_cast<std::size_t>(spec.trials));
      try {
        slots[t] = run_task(spec, grid_idx, trial);
        done[t] = 1;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        error_msg = e.what();
        failed.store(true);
        return;
      }
    }
  };

  const int n_threads = std::max(1, threads);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  if (failed.load()) throw Error("experiment task failed: " + error_msg);

  ExperimentResult result;
  result.interrupted = g_stop_requested.load();
  // Deterministic reduction order regardless of scheduling.
  for (std::size_t t = 0; t < n_tasks; ++t) {
    if (!done[t]) continue;
    result.rows.insert(result.rows.end(), slots[t].begin(), slots[t].end());
  }
  result.summary = summarize(result.rows);
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  struct Key {
    double value;
    DIMethod method;
    Direction direction;
    bool operator<(const Key& o) const {
      if (value != o.value) return value < o.value;
      if (method != o.method) return method < o.method;
      return direction < o.direction;
    }
  };
  std::map<Key, std::vector<double>> groups;
  std::vector<Key> order;
  for (const auto& r : rows) {
    const Key key{r.sweep_value, r.method, r.direction};
    auto it = groups.find(key);
    if (it == groups.end()) order.push_back(key);
    groups[key].push_back(r.di_nats);
  }
  std::vector<SummaryRow> out;
  for (const Key& key : order) {
    const auto& v = groups[key];
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double var = 0.0;
    if (v.size() > 1) {
      for (double x : v) var += (x - mean) * (x - mean);
      var /= n - 1.0;
    }
    const double sd = std::sqrt(var);
    out.push_back({key.value, key.method, key.direction, mean, sd,
                   mean * kNatsToBits, sd * kNatsToBits,
                   static_cast<int>(v.size())});
  }
  return out;
}

void write_results_csv(const std::filesystem::path& path,
                       const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << "sweep_value,trial,method,direction,di_nats,di_bits,m_used,p_value,"
         "significant,runtime_ms\n";
  for (const auto& r : rows) {
    out << format_double(r.sweep_value) << ',' << r.trial << ','
        << to_string(r.method) << ',' << to_string(r.direction) << ','
        << format_double(r.di_nats) << ',' << format_double(r.di_bits) << ','
        << r.m_used << ',';
    if (r.p_value) out << format_double(*r.p_value);
    out << ',';
    if (r.significant) out << (*r.significant ? "true" : "false");
    out << ',';
    if (r.runtime_ms) out << format_double(*r.runtime_ms);
    out << '\n';
  }
}

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<SummaryRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << "sweep_value,method,direction,mean_di_nats,std_di_nats,mean_di_bits,"
         "std_di_bits,trials\n";
  for (const auto& r : rows) {
    out << format_double(r.sweep_value) << ',' << to_string(r.method) << ','
        << to_string(r.direction) << ',' << format_double(r.mean_nats) << ','
        << format_double(r.std_nats) << ',' << format_double(r.mean_bits)
        << ',' << format_double(r.std_bits) << ',' << r.trials << '\n';
  }
}

}  // namespace diknn
