#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "nframes/config.hpp"
#include "nframes/runner.hpp"

using namespace nframes;
using nlohmann::json;

namespace {

// The canonical three-sample configuration: d = 3, order 2, axis anchor,
// counting measure, samples {e1, e2, (e1+e2)/sqrt(2)}.
std::string instance_k_config(const std::string& operations) {
  return std::string(R"({
    "ambient": {"dim": 3, "order": 2},
    "anchors": {"type": "explicit", "vectors": [[0, 0, 1]]},
    "measure": {"type": "explicit", "weights": [1, 1, 1]},
    "family": {"type": "explicit", "samples": [
      [1, 0, 0],
      [0, 1, 0],
      [0.70710678118654752, 0.70710678118654752, 0]
    ]},
    "operations": )") +
         operations + "\n}";
}

} // namespace

TEST_CASE("fnv1a64 reference vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("config parsing validates the schema") {
  SUBCASE("well-formed config parses") {
    const ExperimentConfig config =
        parse_config_text(instance_k_config(R"([{"op": "bounds"}])"));
    CHECK(config.space.dim == 3);
    CHECK(config.space.order == 2);
    CHECK(config.operations.size() == 1);
    CHECK(config.operations[0].op == "bounds");
    CHECK_FALSE(config.has_seed);
  }
  SUBCASE("malformed JSON") {
    CHECK_THROWS_AS(parse_config_text("{not json"), InputError);
  }
  SUBCASE("missing required keys") {
    CHECK_THROWS_AS(parse_config_text(R"({"operations": []})"), InputError);
    CHECK_THROWS_AS(parse_config_text(
                        R"({"ambient": {"dim": 3, "order": 2}})"),
                    InputError);
  }
  SUBCASE("unknown operation") {
    CHECK_THROWS_AS(
        parse_config_text(instance_k_config(R"([{"op": "frobnicate"}])")),
        InputError);
  }
  SUBCASE("random family requires a seed") {
    const std::string config = R"({
      "ambient": {"dim": 3, "order": 2},
      "anchors": {"type": "axis_tail"},
      "measure": {"type": "uniform", "count": 4},
      "family": {"type": "random"},
      "operations": [{"op": "bounds"}]
    })";
    CHECK_THROWS_AS(parse_config_text(config), InputError);
    json with_seed = json::parse(config);
    with_seed["seed"] = 42;
    CHECK_NOTHROW(parse_config_text(with_seed.dump()));
  }
  SUBCASE("non-positive weights are rejected") {
    const std::string config = R"({
      "ambient": {"dim": 3, "order": 2},
      "anchors": {"type": "axis_tail"},
      "measure": {"type": "explicit", "weights": [1, -1]},
      "family": {"type": "fourier"},
      "operations": []
    })";
    CHECK_THROWS_AS(parse_config_text(config), InputError);
  }
  SUBCASE("sample count must match the node count") {
    const std::string config = R"({
      "ambient": {"dim": 3, "order": 2},
      "anchors": {"type": "axis_tail"},
      "measure": {"type": "uniform", "count": 3},
      "family": {"type": "explicit", "samples": [[1, 0, 0], [0, 1, 0]]},
      "operations": []
    })";
    CHECK_THROWS_AS(parse_config_text(config), InputError);
  }
  SUBCASE("ambient dimension must be at least the order") {
    const std::string config = R"({
      "ambient": {"dim": 2, "order": 3},
      "anchors": {"type": "axis_tail"},
      "measure": {"type": "uniform", "count": 2},
      "family": {"type": "fourier"},
      "operations": []
    })";
    CHECK_THROWS_AS(parse_config_text(config), InputError);
  }
  SUBCASE("negative seed is rejected") {
    json config = json::parse(instance_k_config(R"([{"op": "bounds"}])"));
    config["seed"] = -1;
    CHECK_THROWS_AS(parse_config_text(config.dump()), InputError);
  }
  SUBCASE("frame tolerance override") {
    json config = json::parse(instance_k_config(R"([{"op": "bounds"}])"));
    config["tolerances"] = {{"frame", 1e-6}};
    CHECK(parse_config_text(config.dump()).frame_tol == 1e-6);
    config["tolerances"] = {{"frame", 0.0}};
    CHECK_THROWS_AS(parse_config_text(config.dump()), InputError);
  }
}

TEST_CASE("run_experiment reports optimal bounds for the canonical family") {
  const ExperimentConfig config =
      parse_config_text(instance_k_config(R"([{"op": "bounds"}])"));
  const RunOutcome outcome = run_experiment(config);
  CHECK(outcome.all_checks_passed);

  const json report = json::parse(outcome.report_text);
  REQUIRE(report.contains("meta"));
  REQUIRE(report.contains("operations"));
  REQUIRE(report.at("operations").size() == 1);

  const json& op = report.at("operations").at(0);
  CHECK(op.at("name") == "bounds");
  CHECK(op.at("inputs_digest").get<std::string>().rfind("fnv1a64:", 0) == 0);
  CHECK(std::abs(op.at("result").at("lower").get<double>() - 1.0) <= 1e-9);
  CHECK(std::abs(op.at("result").at("upper").get<double>() - 2.0) <= 1e-9);
  CHECK(op.at("result").at("is_frame").get<bool>());
  for (const auto& check : op.at("checks")) {
    CHECK(check.at("pass").get<bool>());
    CHECK(check.at("residual").get<double>() >= 0.0);
  }
}

TEST_CASE("unit multiplier spectrum equals the frame-operator spectrum") {
  const ExperimentConfig config = parse_config_text(instance_k_config(
      R"([{"op": "spectrum"},
          {"op": "multiplier", "symbol": {"type": "ones"},
           "synthesis": "same"}])"));
  const RunOutcome outcome = run_experiment(config);
  CHECK(outcome.all_checks_passed);

  const json report = json::parse(outcome.report_text);
  const json& spec_op = report.at("operations").at(0);
  const json& mult_op = report.at("operations").at(1);
  REQUIRE(mult_op.at("result").contains("spectrum"));
  const auto s1 = spec_op.at("result").at("spectrum");
  const auto s2 = mult_op.at("result").at("spectrum");
  REQUIRE(s1.size() == s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    CHECK(std::abs(s1.at(i).get<double>() - s2.at(i).get<double>()) <= 1e-12);
  }
}

TEST_CASE("fixed seed makes random-family reports byte-identical") {
  const std::string config_text = R"({
    "ambient": {"dim": 4, "order": 2},
    "anchors": {"type": "axis_tail"},
    "measure": {"type": "uniform", "count": 6},
    "family": {"type": "random"},
    "seed": 42,
    "operations": [{"op": "bounds"}, {"op": "dual"},
                   {"op": "tensor", "right": {
                     "ambient": {"dim": 3, "order": 2},
                     "anchors": {"type": "axis_tail"},
                     "measure": {"type": "uniform", "count": 4},
                     "family": {"type": "random"}}}]
  })";
  const ExperimentConfig config = parse_config_text(config_text);
  const RunOutcome first = run_experiment(config);
  const RunOutcome second = run_experiment(config);
  CHECK(first.report_text == second.report_text);
  CHECK(first.all_checks_passed);

  // A different seed changes the sampled family and hence the report.
  const RunOutcome other = run_experiment(config, 43);
  CHECK(other.report_text != first.report_text);
}

TEST_CASE("report JSON round-trips through the parser") {
  const ExperimentConfig config = parse_config_text(instance_k_config(
      R"([{"op": "bounds"}, {"op": "dual"},
          {"op": "transform", "operator": {"type": "scale", "factor": 2}}])"));
  const RunOutcome outcome = run_experiment(config);
  const json report = json::parse(outcome.report_text);
  CHECK(json::parse(report.dump(2) + "\n") == report);
  CHECK(report.at("meta").at("tool") == "nframes");
  CHECK(report.at("meta").at("seed").get<uint64_t>() == 0);
}

TEST_CASE("dual and transform operations report their invariants") {
  const ExperimentConfig config = parse_config_text(instance_k_config(
      R"([{"op": "dual"},
          {"op": "transform",
           "operator": {"type": "explicit", "entries": [[0, 1], [1, 0]]}}])"));
  const RunOutcome outcome = run_experiment(config);
  CHECK(outcome.all_checks_passed);

  const json report = json::parse(outcome.report_text);
  const json& dual_op = report.at("operations").at(0);
  CHECK(dual_op.at("result").at("duality_residual").get<double>() <= 1e-10);
  const json& transform_op = report.at("operations").at(1);
  // A swap is unitary: bounds are preserved.
  CHECK(std::abs(transform_op.at("result").at("lower").get<double>() - 1.0)
        <= 1e-9);
  CHECK(std::abs(transform_op.at("result").at("upper").get<double>() - 2.0)
        <= 1e-9);
}

TEST_CASE("singular frames surface as failed checks, not crashes") {
  // One sample cannot span a two-dimensional quotient.
  const std::string config_text = R"({
    "ambient": {"dim": 3, "order": 2},
    "anchors": {"type": "axis_tail"},
    "measure": {"type": "explicit", "weights": [1]},
    "family": {"type": "explicit", "samples": [[1, 0, 0]]},
    "operations": [{"op": "dual"}]
  })";
  const RunOutcome outcome = run_experiment(parse_config_text(config_text));
  CHECK_FALSE(outcome.all_checks_passed);
  const json report = json::parse(outcome.report_text);
  const json& op = report.at("operations").at(0);
  CHECK(op.at("result").contains("error"));
  CHECK(op.at("result").at("error").at("kind") == "singular-frame");
}

TEST_CASE("spectrum_csv renders ascending eigenvalues") {
  SUBCASE("canonical family") {
    const ExperimentConfig config =
        parse_config_text(instance_k_config(R"([{"op": "bounds"}])"));
    const std::string csv = spectrum_csv(config);
    REQUIRE(csv.rfind("index,eigenvalue\n", 0) == 0);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    std::getline(lines, line);
    CHECK(line.rfind("0,", 0) == 0);
    CHECK(std::abs(std::stod(line.substr(2)) - 1.0) <= 1e-12);
    std::getline(lines, line);
    CHECK(line.rfind("1,", 0) == 0);
    CHECK(std::abs(std::stod(line.substr(2)) - 2.0) <= 1e-12);
  }
  SUBCASE("orthonormal family: all eigenvalues one") {
    const std::string config_text = R"({
      "ambient": {"dim": 3, "order": 2},
      "anchors": {"type": "axis_tail"},
      "measure": {"type": "uniform", "count": 2},
      "family": {"type": "explicit", "samples": [[1, 0, 0], [0, 1, 0]]},
      "operations": [{"op": "spectrum"}]
    })";
    const std::string csv = spectrum_csv(parse_config_text(config_text));
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
      const auto comma = line.find(',');
      REQUIRE(comma != std::string::npos);
      CHECK(std::abs(std::stod(line.substr(comma + 1)) - 1.0) <= 1e-12);
      ++rows;
    }
    CHECK(rows == 2);
  }
  SUBCASE("a config without any operator request is a validation error") {
    const ExperimentConfig config = parse_config_text(
        instance_k_config(R"([{"op": "dual"}])"));
    CHECK_THROWS_AS(spectrum_csv(config), InputError);
  }
}

TEST_CASE("tensor operation multiplies bounds in the report") {
  const std::string right = R"({
    "ambient": {"dim": 3, "order": 2},
    "anchors": {"type": "explicit", "vectors": [[0, 0, 1]]},
    "measure": {"type": "explicit", "weights": [1, 1, 1]},
    "family": {"type": "explicit", "samples": [
      [1, 0, 0], [0, 1, 0],
      [0.70710678118654752, 0.70710678118654752, 0]]}
  })";
  const ExperimentConfig config = parse_config_text(
      instance_k_config(R"([{"op": "tensor", "right": )" + right + "}]"));
  const RunOutcome outcome = run_experiment(config);
  CHECK(outcome.all_checks_passed);

  const json report = json::parse(outcome.report_text);
  const json& op = report.at("operations").at(0);
  CHECK(std::abs(op.at("result").at("lower").get<double>() - 1.0) <= 1e-9);
  CHECK(std::abs(op.at("result").at("upper").get<double>() - 4.0) <= 1e-9);
  CHECK(op.at("result").at("dim").get<int>() == 4);
}
