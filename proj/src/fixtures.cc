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

#include "metastrat/fixtures.h"

#include <cmath>
#include <sstream>

#include "metastrat/equilibrium.h"
#include "metastrat/error.h"

namespace metastrat {

Program ParseFor(const Game& game, int player, const std::string& text) {
  return ParseProgram(game.grammar(player), text);
}

PayoffTable BuildDoExampleTable(const Game& game) {
  PayoffTable table(game);
  const int rangers = game.spec().rangers_player;
  for (const char* text : {"defend[2]", "defend[1] defend[2] defend[4]",
                           "defend[1] defend[2] defend[3]"}) {
    table.AddStrategy(rangers, ParseFor(game, rangers, text));
  }
  for (const char* text : {"attack[1]", "attack[1] attack[2] attack[3]",
                           "attack[1] attack[2] attack[5]"}) {
    table.AddStrategy(1 - rangers, ParseFor(game, 1 - rangers, text));
  }
  return table;
}

PpsroResult RunIbrCycleExample(const Game& game) {
  const int rangers = game.spec().rangers_player;
  const int poachers = 1 - rangers;
  // Each search evaluates its start and exactly one scripted neighbor.
  std::vector<Program> script = {
      ParseFor(game, poachers, "attack[1]"), ParseFor(game, rangers, "defend[1]"),
      ParseFor(game, poachers, "attack[2]"), ParseFor(game, rangers, "defend[2]")};
  auto position = std::make_shared<std::size_t>(0);

  PpsroConfig config;
  config.learner = LearnerKind::kIBR;
  config.first_player = poachers;
  config.games_per_search = 2;
  // 1 initial game, then searches of 2 games plus table fill-ins 1, 2, 2, 3.
  config.budget = 17;
  config.initial[rangers] = ParseFor(game, rangers, "defend[2]");
  config.initial[poachers] = ParseFor(game, poachers, "attack[2]");
  config.search.neighbor = [script, position](const Program& current, Rng&) {
    if (*position >= script.size()) return current;
    return script[(*position)++];
  };
  return PpsroRun(game, config, /*seed=*/1);
}

PruningExample BuildPruningExample(const Game& game) {
  const int rangers = game.spec().rangers_player;
  const int poachers = 1 - rangers;
  PruningExample ex{PpsroState(game), {}, {}};
  PayoffTable& table = ex.state.table;
  table.AddStrategy(poachers, ParseFor(game, poachers, "attack[2]"));
  table.AddStrategy(rangers, ParseFor(game, rangers, "defend[2]"));
  table.AddStrategy(poachers, ParseFor(game, poachers, "attack[1]"));
  table.AddStrategy(rangers, ParseFor(game, rangers, "defend[1] defend[2]"));
  ex.state.support[rangers] = {0, 1};
  ex.state.support[poachers] = {0, 1};
  ex.trace_support = {0, 1};

  // The poachers' search evaluated attack[1], attack[2] and then attack[3].
  for (const char* text : {"attack[1]", "attack[2]", "attack[3]"}) {
    TraceRecord record{ParseFor(game, poachers, text), {}, 0.0};
    const DecodedStrategy self = game.Decode(poachers, record.candidate);
    for (int j : ex.trace_support) {
      const int u = game.UtilityFor(poachers, self, table.decoded(rangers, j));
      record.utilities.push_back(static_cast<std::int8_t>(u));
      record.expected += 0.5 * u;
    }
    ex.trace.records.push_back(std::move(record));
  }
  return ex;
}

FixtureReport CheckDoExample() {
  FixtureReport report{"do-empirical-game-equilibrium", false, ""};
  const Game game(GameSpec::PoachersRangers(5));
  const PayoffTable table = BuildDoExampleTable(game);
  const std::vector<std::vector<double>> expected = {
      {-1, -1, -1}, {1, -1, -1}, {1, 1, -1}};
  if (table.Matrix() != expected) {
    report.detail = "payoff table differs:\n" + table.ToCsv();
    return report;
  }
  const Equilibrium eq = SolveZeroSum(MatrixGame{table.Matrix()});
  const std::vector<double> want = {0.0, 0.0, 1.0};
  bool ok = std::abs(eq.value + 1.0) <= 1e-9;
  for (int c = 0; c < 3; ++c) ok = ok && std::abs(eq.column[c] - want[c]) <= 1e-9;
  std::ostringstream detail;
  detail << "poachers (" << eq.column[0] << ", " << eq.column[1] << ", "
         << eq.column[2] << "), value " << eq.value;
  report.passed = ok;
  report.detail = detail.str();
  return report;
}

FixtureReport CheckIbrCycle() {
  FixtureReport report{"ibr-cycle", false, ""};
  const Game game(GameSpec::PoachersRangers(2));
  const PpsroResult result = RunIbrCycleExample(game);
  const PayoffTable& table = result.state.table;
  const int rangers = game.spec().rangers_player;
  const int poachers = 1 - rangers;

  // Additions alternate poachers/rangers after the initial pair.
  std::vector<std::string> trajectory;
  if (table.num_strategies(rangers) >= 1) trajectory.push_back(Render(table.strategy(rangers, 0)));
  for (int i = 1; i < 3; ++i) {
    if (table.num_strategies(poachers) > i) trajectory.push_back(Render(table.strategy(poachers, i)));
    if (table.num_strategies(rangers) > i) trajectory.push_back(Render(table.strategy(rangers, i)));
  }
  const std::vector<std::string> want = {"defend[2]", "attack[1]", "defend[1]",
                                         "attack[2]", "defend[2]"};
  std::string joined;
  for (const auto& s : trajectory) joined += (joined.empty() ? "" : " -> ") + s;
  report.passed = trajectory == want;
  report.detail = joined;
  return report;
}

FixtureReport CheckPruningExample() {
  FixtureReport report{"2l-redundant-pruning", false, ""};
  const Game game(GameSpec::PoachersRangers(3));
  PruningExample ex = BuildPruningExample(game);
  const int rangers = game.spec().rangers_player;
  const MetaStrategy meta =
      PruneRedundant(ex.state, rangers, ex.trace_support, ex.trace);
  std::string support;
  for (int j : ex.state.support[rangers]) {
    support += (support.empty() ? "" : ", ") + Render(ex.state.table.strategy(rangers, j));
  }
  report.passed = ex.state.support[rangers] == std::vector<int>{1} &&
                  meta.probabilities == std::vector<double>{0.0, 1.0};
  report.detail = "support {" + support + "}";
  return report;
}

std::vector<FixtureReport> RunSelfChecks() {
  std::vector<FixtureReport> out;
  for (auto check : {CheckDoExample, CheckIbrCycle, CheckPruningExample}) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({"fixture", false, e.what()});
    }
  }
  return out;
}

}  // namespace metastrat
