#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "meshbcast/experiment.hpp"
#include "meshbcast/schedule_io.hpp"

using namespace meshbcast;

namespace {

int count_lines(const std::string& s) {
  int lines = 0;
  for (char c : s)
    if (c == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_CASE("summary csv has the pinned header and one row per trial") {
  MeshGraph g = generate_graph("grid(3,3)", 1);
  ExperimentConfig ec;
  ec.protocol = "robust";
  ec.trials = 4;
  ec.sim.p = 0.1;
  auto res = run_experiment(g, ec);
  REQUIRE(res.rows.size() == 4);
  std::string csv = summary_csv(res.rows);
  CHECK(csv.rfind("trial,protocol,n,D,p,x,k,completion_round,success,wall_time_ms\n", 0) == 0);
  CHECK(count_lines(csv) == 5);
  // Without --timing the time column stays at a reproducible zero.
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  int row = 0;
  while (std::getline(is, line)) {
    CHECK(line.rfind(std::to_string(row) + ",robust,9,4,0.1,4,1,", 0) == 0);
    CHECK(line.substr(line.size() - 2) == ",0");
    ++row;
  }
}

TEST_CASE("experiments replay byte for byte under one seed") {
  MeshGraph g = generate_graph("rand(20,0.2)", 9);
  ExperimentConfig ec;
  ec.protocol = "multi";
  ec.trials = 3;
  ec.sim.p = 0.15;
  ec.sim.k = 3;
  ec.sim.seed = 42;
  ec.sim.record_events = true;
  auto a = run_experiment(g, ec);
  auto b = run_experiment(g, ec);
  CHECK(summary_csv(a.rows) == summary_csv(b.rows));
  CHECK(events_csv(a.traces) == events_csv(b.traces));
  ec.sim.seed = 43;
  auto c = run_experiment(g, ec);
  CHECK(summary_csv(a.rows) != summary_csv(c.rows));
}

TEST_CASE("events csv is only populated when asked for") {
  MeshGraph g = generate_graph("path(5)", 1);
  ExperimentConfig ec;
  ec.protocol = "decay";
  ec.trials = 2;
  auto res = run_experiment(g, ec);
  CHECK(events_csv(res.traces) == "trial,round,node,event,detail\n");
  ec.sim.record_events = true;
  res = run_experiment(g, ec);
  std::string csv = events_csv(res.traces);
  CHECK(count_lines(csv) > 1);
  CHECK(csv.find(",TX,") != std::string::npos);
  CHECK(csv.find(",RX_MSG,") != std::string::npos);
  CHECK(csv.find(",INFORMED,") != std::string::npos);
}

TEST_CASE("timing flag fills the last column") {
  MeshGraph g = generate_graph("path(5)", 1);
  ExperimentConfig ec;
  ec.protocol = "decay";
  ec.trials = 1;
  ec.measure_time = true;
  auto res = run_experiment(g, ec);
  CHECK(res.rows[0].wall_time_ms > 0.0);
}

TEST_CASE("config validation") {
  MeshGraph g = generate_graph("path(5)", 1);
  ExperimentConfig ec;
  ec.protocol = "nope";
  CHECK_THROWS_AS(run_experiment(g, ec), std::invalid_argument);
  ec.protocol = "decay";
  ec.trials = 0;
  CHECK_THROWS_AS(run_experiment(g, ec), std::invalid_argument);
  ec.trials = 1;
  ec.sim.p = 1.0;
  CHECK_THROWS_AS(run_experiment(g, ec), std::invalid_argument);
  ec.sim.p = 0.0;
  ec.sim.k = 4;  // k > 1 without the multi protocol
  CHECK_THROWS_AS(run_experiment(g, ec), std::invalid_argument);
  ec.sim.k = 1;
  ec.source = 5;
  CHECK_THROWS_AS(run_experiment(g, ec), std::invalid_argument);
}

TEST_CASE("schedule documents round trip byte for byte") {
  MeshGraph g = generate_graph("grid(4,4)", 1);
  Sgst sgst = build_sgst(g, 0, 2);
  SimConfig cfg;
  for (const char* protocol : {"faultless", "robust"}) {
    ScheduleDocument doc = make_schedule_document(g, sgst, protocol, cfg);
    std::string text = render_schedule(doc);
    ScheduleDocument back = parse_schedule(text, g);
    CHECK(render_schedule(back) == text);
  }
  // The multi protocol shares the robust slot structure.
  ScheduleDocument multi = make_schedule_document(g, sgst, "multi", cfg);
  CHECK(multi.protocol == "robust");
  CHECK_THROWS_AS(make_schedule_document(g, sgst, "decay", cfg), ScheduleError);
}

TEST_CASE("schedule parsing rejects tampered documents") {
  MeshGraph g = generate_graph("grid(4,4)", 1);
  Sgst sgst = build_sgst(g, 0, 2);
  SimConfig cfg;
  std::string text = render_schedule(make_schedule_document(g, sgst, "faultless", cfg));

  CHECK_THROWS_AS(parse_schedule("{", g), ScheduleError);
  CHECK_THROWS_AS(parse_schedule("[]", g), ScheduleError);
  CHECK_THROWS_AS(parse_schedule("{}", g), ScheduleError);

  // Wrong graph.
  MeshGraph other = generate_graph("path(16)", 1);
  CHECK_THROWS_AS(parse_schedule(text, other), ScheduleError);

  // Corrupted rank entry.
  std::string bad = text;
  auto pos = bad.find("\"rank2\"");
  REQUIRE(pos != std::string::npos);
  pos = bad.find('1', pos);
  bad[pos] = '7';
  CHECK_THROWS_AS(parse_schedule(bad, g), ScheduleError);
}

TEST_CASE("sweep aggregates per cell and rejects empty grids") {
  MeshGraph g = generate_graph("grid(3,3)", 1);
  SweepConfig sc;
  sc.protocols = {"decay", "robust"};
  sc.ps = {0.0, 0.1};
  sc.xs = {0};
  sc.ks = {1};
  sc.trials = 5;
  auto cells = run_sweep(g, sc);
  REQUIRE(cells.size() == 4);
  for (const auto& cell : cells) {
    CHECK(cell.trials == 5);
    CHECK(cell.n == 9);
    CHECK(cell.successes >= 0);
    if (cell.successes > 0) {
      CHECK(cell.q25_completion <= cell.median_completion);
      CHECK(cell.median_completion <= cell.q75_completion);
      CHECK(cell.q75_completion <= cell.max_completion);
      CHECK(cell.mean_completion > 0);
    }
  }
  std::string csv = sweep_csv(cells);
  CHECK(csv.rfind("protocol,p,x,k,n,D,trials,successes,success_rate,mean_completion,"
                  "median_completion,q25_completion,q75_completion,max_completion\n",
                  0) == 0);
  CHECK(count_lines(csv) == 5);

  sc.ps.clear();
  CHECK_THROWS_AS(run_sweep(g, sc), std::invalid_argument);
}

TEST_CASE("sweep results replay byte for byte") {
  MeshGraph g = generate_graph("rand(16,0.25)", 2);
  SweepConfig sc;
  sc.protocols = {"robust", "multi"};
  sc.ps = {0.1};
  sc.xs = {0, 3};
  sc.ks = {1, 2};
  sc.trials = 3;
  sc.sim.seed = 5;
  auto a = run_sweep(g, sc);
  auto b = run_sweep(g, sc);
  CHECK(sweep_csv(a) == sweep_csv(b));
}
