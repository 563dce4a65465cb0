// Copyright 2026 The Metastrat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "metastrat/error.h"
#include "metastrat/experiment.h"
#include "metastrat/svg_chart.h"

namespace metastrat {
namespace {

constexpr const char* kSmall = R"({
  "game": {"kind": "blotto", "size": 3, "troops": 4},
  "learners": ["IBR", "2L"],
  "budget": 2000,
  "games_per_search": 200,
  "seeds": [4, 5, 6],
  "schedule": [10, 500, 2000]
})";

TEST_SUITE("experiment") {

TEST_CASE("config parsing and defaults") {
  const ExperimentConfig c = ParseExperimentConfig(kSmall);
  CHECK(c.game.kind == GameKind::kBlotto);
  CHECK(c.game.troops == 4);
  CHECK(c.learners == std::vector<LearnerKind>{LearnerKind::kIBR, LearnerKind::kTwoL});
  CHECK(c.seeds == std::vector<std::uint64_t>{4, 5, 6});
  CHECK(c.runs() == 3);

  const ExperimentConfig d =
      ParseExperimentConfig(R"({"game": {"kind": "pr"}, "runs": 3, "seed": 10})");
  CHECK(d.game.size == 10);
  CHECK(d.learners.size() == 4);
  CHECK(d.seeds == std::vector<std::uint64_t>{10, 11, 12});
  CHECK(d.schedule == DefaultSchedule(100000));
  CHECK(d.blotto_pool_size == 20);
  CHECK(d.blotto_pool_seed == 20240101);
  CHECK(MetricPlayer(d.game) == 0);

  const ExperimentConfig e = ParseExperimentConfig(
      R"({"game": {"kind": "poachers_rangers", "size": 3, "rangers_player": 1},
          "tournament": {"repetitions": 4, "strategies": [
             {"name": "all", "programs": ["defend[1] defend[2] defend[3]", "attack[1]"]}]}})");
  CHECK(MetricPlayer(e.game) == 1);
  CHECK(e.repetitions == 4);
  REQUIRE(e.strategies.size() == 1);
  CHECK(e.strategies[0].programs[1] == "attack[1]");
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(ParseExperimentConfig("{"), ConfigError);
  CHECK_THROWS_AS(ParseExperimentConfig("[]"), ConfigError);
  CHECK_THROWS_AS(ParseExperimentConfig("{}"), ConfigError);
  CHECK_THROWS_AS(ParseExperimentConfig(R"({"game": {"kind": "go"}})"), ConfigError);
  CHECK_THROWS_AS(ParseExperimentConfig(R"({"game": {"kind": "cm", "size": 0}})"), ConfigError);
  CHECK_THROWS_AS(ParseExperimentConfig(R"({"game": {"kind": "cm"}, "budgett": 5})"),
                  ConfigError);
  CHECK_THROWS_AS(ParseExperimentConfig(R"({"game": {"kind": "cm"}, "budget": "big"})"),
                  ConfigError);
  CHECK_THROWS_AS(ParseExperimentConfig(R"({"game": {"kind": "cm"}, "learners": ["XX"]})"),
                  ConfigError);
  CHECK_THROWS_AS(ParseExperimentConfig(R"({"game": {"kind": "cm"}, "seeds": [1], "runs": 2})"),
                  ConfigError);
  CHECK_THROWS_AS(
      ParseExperimentConfig(R"({"game": {"kind": "cm"}, "budget": 100, "schedule": [5, 2]})"),
      ConfigError);
  CHECK_THROWS_AS(
      ParseExperimentConfig(R"({"game": {"kind": "cm"}, "budget": 100, "schedule": [500]})"),
      ConfigError);
  CHECK_THROWS_AS(
      ParseExperimentConfig(R"({"game": {"kind": "cm"}, "tournament": {"repetitions": 3}})"),
      ConfigError);
  CHECK_THROWS_AS(LoadExperimentConfig("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("shipped configs and grammar load") {
  const std::string root = METASTRAT_SOURCE_DIR;
  for (const char* name : {"pr10", "cm20", "blotto", "tournament_cm"}) {
    CAPTURE(name);
    CHECK_NOTHROW(LoadExperimentConfig(root + "/configs/" + name + ".json"));
  }
  std::ifstream in(root + "/grammars/conditional.grammar");
  std::stringstream text;
  text << in.rdbuf();
  const GrammarPtr g = LoadGrammar(text.str());
  CHECK(g->num_nonterminals() == 3);
  CHECK(g->num_terminals() == 6);
}

TEST_CASE("default schedule") {
  CHECK(DefaultSchedule(100) == std::vector<long long>{1, 2, 5, 10, 20, 50, 100});
  CHECK(DefaultSchedule(3000) ==
        std::vector<long long>{1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 3000});
}

TEST_CASE("curves are reproducible and independent of the thread count") {
  const ExperimentConfig c = ParseExperimentConfig(kSmall);
  setenv("METASTRAT_THREADS", "1", 1);
  const LearningCurves one = RunLearningCurves(c);
  setenv("METASTRAT_THREADS", "3", 1);
  CHECK(WorkerThreads() == 3);
  const LearningCurves three = RunLearningCurves(c);
  unsetenv("METASTRAT_THREADS");
  CHECK(one.RowsCsv() == three.RowsCsv());
  CHECK(one.SummaryCsv() == three.SummaryCsv());
  CHECK(one.ProgramsCsv() == three.ProgramsCsv());
  CHECK(one.rows.size() == 2 * 3 * 3);
  CHECK(one.summary.size() == 2 * 3);
  CHECK(one.RowsCsv().rfind("learner,seed,games_played,metric\n", 0) == 0);
  for (const CurveRow& r : one.rows) {
    CHECK(r.metric >= 0.0);
    CHECK(r.metric <= 1.0);
  }
  const std::string svg = one.Svg("blotto", "winning rate");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("2L") != std::string::npos);
}

TEST_CASE("curve points before a strategy's charge show the earlier one") {
  ExperimentConfig c = ParseExperimentConfig(
      R"({"game": {"kind": "cm", "size": 5}, "learners": ["IBR"], "budget": 3000,
          "games_per_search": 500, "seeds": [3], "schedule": [1, 3000]})");
  const LearningCurves curves = RunLearningCurves(c);
  const Game game(c.game);
  const PpsroResult run = PpsroRun(game, c.ToPpsroConfig(LearnerKind::kIBR), 3);
  REQUIRE(curves.rows.size() == 2);
  CHECK(curves.rows[0].program == Render(run.state.table.strategy(0, 0)));
  CHECK(curves.rows[1].program == Render(run.final_programs[0]));
  CHECK(curves.rows[1].metric == ClimbHeight(game, 0, run.final_programs[0]));
}

TEST_CASE("blotto metric uses a fixed reference pool") {
  const ExperimentConfig c = ParseExperimentConfig(kSmall);
  const Game game(c.game);
  const CurveMetric a(game, c), b(game, c);
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const Program p = SampleProgram(game.grammar(0), {}, rng);
    CHECK(a(p) == b(p));
  }
}

TEST_CASE("svg chart") {
  ChartOptions options;
  options.title = "a < b";
  const std::string svg =
      RenderLineChart({{"s", {1, 10, 100}, {0, 1, 2}, {0, 0.5, 0}}}, options);
  CHECK(svg.find("a &lt; b") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

}  // TEST_SUITE

}  // namespace
}  // namespace metastrat
