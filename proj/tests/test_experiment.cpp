#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "diknn/experiment.hpp"

using namespace diknn;

namespace {

const char* kMinimalSpec = R"({
  "spec_version": 1,
  "generator": {"kind": "linear", "beta1": 0.5, "beta2": 0.5},
  "sweep": {"param": "beta1", "values": [0.2, 0.8], "link": "beta2=beta1"},
  "trials": 2,
  "n": 300,
  "methods": ["KSG"],
  "directions": ["X->Y"],
  "order_policy": {"type": "fixed", "m": 2},
  "k": 4,
  "base_seed": 99
})";

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("a minimal spec parses into the right settings") {
  const auto spec = ExperimentSpec::from_json_text(kMinimalSpec);
  CHECK(spec.generator.kind == GeneratorKind::Linear);
  CHECK(spec.sweep_param == "beta1");
  CHECK(spec.sweep_values == std::vector<double>{0.2, 0.8});
  CHECK(spec.sweep_link == "beta2=beta1");
  CHECK(spec.trials == 2);
  CHECK(spec.n == 300);
  CHECK(spec.methods == std::vector<DIMethod>{DIMethod::KSG});
  CHECK(spec.directions == std::vector<Direction>{Direction::XtoY});
  CHECK(spec.order_policy.method == OrderMethod::Fixed);
  CHECK(spec.order_policy.fixed_m == 2);
  CHECK(!spec.significance.has_value());
  CHECK(spec.k == 4);
  CHECK(spec.base_seed == 99);
  CHECK(!spec.timings);
}

TEST_CASE("unknown fields are rejected at every level") {
  auto mutate = [](const std::string& from, const std::string& to) {
    std::string s = kMinimalSpec;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  CHECK_THROWS_AS(
      ExperimentSpec::from_json_text(mutate("\"trials\"", "\"bogus\": 1, \"trials\"")),
      UsageError);
  CHECK_THROWS_AS(
      ExperimentSpec::from_json_text(mutate("\"kind\"", "\"mystery\": 1, \"kind\"")),
      UsageError);
  CHECK_THROWS_AS(
      ExperimentSpec::from_json_text(mutate("\"param\"", "\"step\": 1, \"param\"")),
      UsageError);
  CHECK_THROWS_AS(
      ExperimentSpec::from_json_text(mutate("\"type\"", "\"weighted\": 1, \"type\"")),
      UsageError);
}

TEST_CASE("spec validation failures") {
  auto mutate = [](const std::string& from, const std::string& to) {
    std::string s = kMinimalSpec;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  CHECK_THROWS_AS(ExperimentSpec::from_json_text(mutate("\"spec_version\": 1",
                                                        "\"spec_version\": 2")),
                  UsageError);
  CHECK_THROWS_AS(ExperimentSpec::from_json_text(mutate("\"trials\": 2",
                                                        "\"trials\": 0")),
                  UsageError);
  CHECK_THROWS_AS(ExperimentSpec::from_json_text(mutate("[0.2, 0.8]", "[]")),
                  UsageError);
  CHECK_THROWS_AS(ExperimentSpec::from_json_text(mutate("\"param\": \"beta1\"",
                                                        "\"param\": \"delta\"")),
                  UsageError);
  CHECK_THROWS_AS(ExperimentSpec::from_json_text(mutate(
                      "\"link\": \"beta2=beta1\"", "\"link\": \"beta2=2*beta1\"")),
                  UsageError);
  CHECK_THROWS_AS(ExperimentSpec::from_json_text(mutate("\"m\": 2", "\"m\": 0")),
                  UsageError);
  CHECK_THROWS_AS(ExperimentSpec::from_json_text("{not json"), UsageError);
}

TEST_CASE("significance block and auto order policy parse") {
  std::string s = kMinimalSpec;
  const std::string anchor = "\"order_policy\": {\"type\": \"fixed\", \"m\": 2},";
  s.replace(s.find(anchor), anchor.size(),
            "\"order_policy\": {\"type\": \"auto-joint\", \"candidates\": [1, 2, 3]},\n"
            "  \"significance\": {\"L\": 19, \"epsilon_p\": 0.05},\n"
            "  \"surrogate\": \"circular-shift\",");
  const auto spec = ExperimentSpec::from_json_text(s);
  CHECK(spec.order_policy.method == OrderMethod::Joint);
  CHECK(spec.order_policy.candidates == std::vector<int>{1, 2, 3});
  REQUIRE(spec.significance.has_value());
  CHECK(spec.significance->L == 19);
  CHECK(spec.significance->epsilon_p == 0.05);
  CHECK(spec.surrogate_kind == SurrogateKind::CircularShift);
}

TEST_CASE("summarize groups rows and computes sample statistics") {
  std::vector<ResultRow> rows;
  for (double v : {1.0, 3.0}) {
    ResultRow r;
    r.sweep_value = 0.5;
    r.method = DIMethod::KSG;
    r.direction = Direction::XtoY;
    r.di_nats = v;
    r.di_bits = v * kNatsToBits;
    rows.push_back(r);
  }
  ResultRow lone;
  lone.sweep_value = 0.7;
  lone.method = DIMethod::GOV;
  lone.direction = Direction::YtoX;
  lone.di_nats = 5.0;
  rows.push_back(lone);

  const auto summary = summarize(rows);
  REQUIRE(summary.size() == 2);
  CHECK(summary[0].sweep_value == 0.5);
  CHECK(summary[0].mean_nats == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(summary[0].std_nats == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(summary[0].trials == 2);
  CHECK(summary[1].mean_nats == 5.0);
  CHECK(summary[1].std_nats == 0.0);  // singleton group
  CHECK(summary[1].trials == 1);
}

TEST_CASE("run_experiment is deterministic across worker counts") {
  const auto spec = ExperimentSpec::from_json_text(kMinimalSpec);
  const auto one = run_experiment(spec, 1);
  const auto four = run_experiment(spec, 4);
  REQUIRE(one.rows.size() == 4);  // 2 grid points x 2 trials x 1 method x 1 dir
  REQUIRE(four.rows.size() == one.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    CHECK(one.rows[i].di_nats == four.rows[i].di_nats);
    CHECK(one.rows[i].sweep_value == four.rows[i].sweep_value);
    CHECK(one.rows[i].trial == four.rows[i].trial);
    CHECK(!one.rows[i].p_value.has_value());
    CHECK(!one.rows[i].runtime_ms.has_value());
  }
  // Stronger coupling carries more information on average.
  CHECK(one.summary.front().mean_nats < one.summary.back().mean_nats);
}

TEST_CASE("results and summary CSVs have the documented shape") {
  const auto spec = ExperimentSpec::from_json_text(kMinimalSpec);
  const auto result = run_experiment(spec, 2);
  const auto dir = std::filesystem::temp_directory_path() / "diknn-test-csv";
  std::filesystem::create_directories(dir);
  write_results_csv(dir / "results.csv", result.rows);
  write_summary_csv(dir / "summary.csv", result.summary);

  const std::string res = read_file(dir / "results.csv");
  CHECK(res.rfind("sweep_value,trial,method,direction,di_nats,di_bits,m_used,"
                  "p_value,significant,runtime_ms\n", 0) == 0);
  // 4 data rows, each ending with three empty optional fields.
  CHECK(std::count(res.begin(), res.end(), '\n') == 5);
  CHECK(res.find(",,,\n") != std::string::npos);

  const std::string sum = read_file(dir / "summary.csv");
  CHECK(sum.rfind("sweep_value,method,direction,mean_di_nats,std_di_nats,"
                  "mean_di_bits,std_di_bits,trials\n", 0) == 0);
  CHECK(std::count(sum.begin(), sum.end(), '\n') == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("byte-identical CSV output across repeated runs") {
  const auto spec = ExperimentSpec::from_json_text(kMinimalSpec);
  const auto dir = std::filesystem::temp_directory_path() / "diknn-test-det";
  std::filesystem::create_directories(dir);
  write_results_csv(dir / "a.csv", run_experiment(spec, 3).rows);
  write_results_csv(dir / "b.csv", run_experiment(spec, 1).rows);
  CHECK(read_file(dir / "a.csv") == read_file(dir / "b.csv"));
  std::filesystem::remove_all(dir);
}
