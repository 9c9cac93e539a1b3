#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mmconc/experiments.hpp"
#include "mmconc/serialization.hpp"

using namespace mmconc;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

} // namespace

TEST_CASE("exponent encoding round trip") {
  CHECK(io::encode_exponent(2.0) == nlohmann::json(2.0));
  CHECK(io::encode_exponent(kInf) == nlohmann::json("inf"));
  CHECK(io::decode_exponent(nlohmann::json(1.5)) == 1.5);
  CHECK(std::isinf(io::decode_exponent(nlohmann::json("inf"))));
  CHECK_THROWS_AS(io::decode_exponent(nlohmann::json("sup")), std::invalid_argument);
}

TEST_CASE("mm-space JSON round trip") {
  const FiniteMMSpace X = FiniteMMSpace::create(2, {0.0, 1.0, 1.0, 0.0}, {0.5, 0.5});
  const nlohmann::json j = io::to_json(X);
  const FiniteMMSpace Y = io::mmspace_from_json(j);
  CHECK(Y.n == X.n);
  CHECK(Y.dist == X.dist);
  CHECK(Y.weights == X.weights);
  CHECK(Y.total_mass == X.total_mass);
  CHECK_THROWS_AS(io::mmspace_from_json(nlohmann::json{{"weights", {1.0}}}),
                  std::invalid_argument);
}

TEST_CASE("mm-space file loading: JSON and CSV") {
  const auto jpath = temp_file("mmconc_space.json");
  write_text(jpath, R"({"dist": [[0, 1], [1, 0]], "weights": [0.5, 0.5]})");
  const FiniteMMSpace X = io::load_mmspace_json(jpath.string());
  CHECK(X.n == 2);
  CHECK(X.d(0, 1) == 1.0);

  const auto dpath = temp_file("mmconc_dist.csv");
  const auto wpath = temp_file("mmconc_weights.csv");
  write_text(dpath, "0,1\n1,0\n");
  write_text(wpath, "0.5\n0.5\n");
  const FiniteMMSpace Y = io::load_mmspace_csv(dpath.string(), wpath.string());
  CHECK(Y.n == 2);
  CHECK(Y.d(0, 1) == 1.0);
  CHECK(Y.weights == std::vector<double>{0.5, 0.5});

  CHECK_THROWS_AS(io::load_mmspace_json("/nonexistent/space.json"), std::runtime_error);
  write_text(dpath, "0,1\n1\n");
  CHECK_THROWS_AS(io::load_mmspace_csv(dpath.string(), wpath.string()), std::invalid_argument);
  std::filesystem::remove(jpath);
  std::filesystem::remove(dpath);
  std::filesystem::remove(wpath);
}

TEST_CASE("cloud JSON round trip with target tag") {
  {
    const WeightedCloud c = WeightedCloud::real_line({0.0, 1.5}, {0.25, 0.75});
    const WeightedCloud back = io::cloud_from_json(io::to_json(c));
    CHECK(back.target == WeightedCloud::Target::RealLine);
    CHECK(back.points == c.points);
    CHECK(back.weights == c.weights);
    CHECK(back.total_mass == c.total_mass);
  }
  {
    const WeightedCloud c =
        WeightedCloud::coordinate_space(2, kInf, {{0.1, 0.2}, {0.3, 0.4}}, {0.5, 0.5});
    const nlohmann::json j = io::to_json(c);
    CHECK(j.at("target_kind") == "coordinate-space");
    CHECK(j.at("r") == "inf");
    const WeightedCloud back = io::cloud_from_json(j);
    CHECK(back.dim == 2);
    CHECK(std::isinf(back.r));
    CHECK(back.points == c.points);
  }
  CHECK_THROWS_AS(
      io::cloud_from_json(nlohmann::json{
          {"target_kind", "torus"}, {"points", nlohmann::json::array()}, {"weights", nlohmann::json::array()}}),
      std::invalid_argument);
}

TEST_CASE("sample set JSON round trip") {
  const SphereSampleSet S = sample_cone(3, 2.0, 5, 99, true);
  const SphereSampleSet back = io::sample_set_from_json(io::to_json(S));
  CHECK(back.n == S.n);
  CHECK(back.p == S.p);
  CHECK(back.seed == S.seed);
  CHECK(back.symmetrized == S.symmetrized);
  CHECK(back.points == S.points);
}

TEST_CASE("suite report serialization") {
  certify::SuiteOptions opts;
  opts.trials = 5;
  opts.seed = 20;
  const auto report = certify::run_inequality_suite(opts);
  const nlohmann::json j = io::to_json(report);
  CHECK(j.at("pass_count").get<std::size_t>() == report.pass_count);
  CHECK(j.at("records").size() == report.records.size());

  std::ostringstream csv;
  io::write_suite_csv(csv, report);
  const std::string text = csv.str();
  CHECK(text.rfind("name,seed,lhs,rhs,margin,pass\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == report.records.size() + 1);
}

TEST_CASE("experiment emission: csv header, rows and empty records") {
  experiments::ExperimentRecord empty;
  empty.command = "demo-two-point";
  std::ostringstream out;
  experiments::emit(empty, "csv", out);
  CHECK(out.str() == "command,n,quantity,value\n");

  experiments::ExperimentConfig cfg;
  cfg.command = "demo-two-point";
  const auto rec = experiments::run_experiment(cfg);
  REQUIRE(rec.rows.size() == 2);
  CHECK(rec.rows[0].quantity == "partial_diameter");
  CHECK(rec.rows[0].value == 0.0);
  CHECK(rec.rows[1].quantity == "sep");
  CHECK(rec.rows[1].value == 1.0);

  std::ostringstream csv;
  experiments::emit(rec, "csv", csv);
  CHECK(csv.str() ==
        "command,n,quantity,value\n"
        "demo-two-point,2,partial_diameter,0\n"
        "demo-two-point,2,sep,1\n");

  CHECK_THROWS_AS(experiments::emit(rec, "xml", csv), std::invalid_argument);
}

TEST_CASE("experiment JSON round-trips numeric payloads") {
  experiments::ExperimentConfig cfg;
  cfg.command = "sphere-concentration";
  cfg.p = 2.0;
  cfg.samples = 200;
  cfg.seed = 4;
  cfg.n_list = {4, 8};
  const auto rec = experiments::run_experiment(cfg);
  const nlohmann::json j = experiments::record_to_json(rec);
  CHECK(j.at("schema") == 1);
  const nlohmann::json parsed = nlohmann::json::parse(j.dump());
  CHECK(parsed == j);
}

TEST_CASE("experiments are deterministic up to wall time") {
  for (const char* command : {"demo-two-point", "theorem1", "prop41"}) {
    experiments::ExperimentConfig cfg;
    cfg.command = command;
    cfg.seed = 77;
    cfg.samples = 50;
    cfg.n_list = {6};
    if (std::string(command) == "theorem1") {
      cfg.p = 1.0;
      cfg.q = 2.0;
      cfg.eps = 0.5;
      cfg.kappa = 0.1;
    } else if (std::string(command) == "prop41") {
      cfg.p = 2.0;
      cfg.q = 2.0;
      cfg.kappa = 0.25;
    }
    auto a = experiments::record_to_json(experiments::run_experiment(cfg));
    auto b = experiments::record_to_json(experiments::run_experiment(cfg));
    a.erase("wall_time_ms");
    b.erase("wall_time_ms");
    CHECK(a.dump() == b.dump());
  }
}

TEST_CASE("experiment rejects bad hypotheses and unknown commands") {
  experiments::ExperimentConfig cfg;
  cfg.command = "nonsense";
  CHECK_THROWS_AS(experiments::run_experiment(cfg), std::invalid_argument);

  cfg.command = "theorem1";
  cfg.p = 2.0;
  cfg.q = 2.0; // needs p < q
  CHECK_THROWS_AS(experiments::run_experiment(cfg), std::invalid_argument);

  cfg.command = "prop41";
  cfg.p = 1.0;
  cfg.q = 2.0; // needs q <= p
  CHECK_THROWS_AS(experiments::run_experiment(cfg), std::invalid_argument);

  cfg.command = "prop41";
  cfg.p = 2.0;
  cfg.q = 2.0;
  cfg.kappa = 0.7; // needs kappa < 1/2
  CHECK_THROWS_AS(experiments::run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("emit_to_path surfaces I/O failures with path context") {
  experiments::ExperimentConfig cfg;
  cfg.command = "demo-two-point";
  const auto rec = experiments::run_experiment(cfg);
  try {
    experiments::emit_to_path(rec, "json", "/nonexistent-dir/out.json");
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/out.json") != std::string::npos);
  }
}
