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

#ifndef METASTRAT_LEARNERS_H_
#define METASTRAT_LEARNERS_H_

// Programmatic policy-space response oracles: grow an empirical game by
// alternately adding hill-climbing best responses to a meta-strategy chosen
// by one of four learners.
//
//   IBR  all mass on the opponent's most recent strategy.
//   FP   uniform over all of the opponent's strategies.
//   DO   the opponent's equilibrium strategy of the empirical game.
//   2L   uniform over a maintained support. New strategies always join it;
//        after each search, support members that the search trace shows are
//        not needed to beat any evaluated candidate are dropped (greedy set
//        cover), and a returned strategy that loses to some dropped strategy
//        triggers a re-search with that strategy restored.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metastrat/empirical_game.h"
#include "metastrat/games.h"
#include "metastrat/search.h"

namespace metastrat {

enum class LearnerKind { kIBR, kFP, kDO, kTwoL };

std::string LearnerName(LearnerKind kind);
// Accepts "IBR", "FP", "DO", "2L" (case-insensitive).
LearnerKind ParseLearnerKind(const std::string& name);

enum class FinalMode { kLast, kMixed, kEquilibrium };
std::string FinalModeName(FinalMode mode);
FinalMode ParseFinalMode(const std::string& name);

struct IterationLog {
  int iteration = 0;
  int player = 0;
  LearnerKind learner = LearnerKind::kIBR;
  // Opponent meta support size before and after pruning (equal unless 2L).
  int support_before = 0;
  int support_after = 0;
  long long games_consumed = 0;
  long long games_total = 0;
  int searches = 0;
  std::string added;
  double metric = 0.0;
};

struct PpsroState {
  explicit PpsroState(const Game& game) : table(game) {}

  PayoffTable table;
  // 2L's maintained supports; unused by the other learners.
  std::array<std::vector<int>, 2> support;
  long long games_played = 0;
  int iteration = 0;
  std::vector<IterationLog> log;
};

struct PpsroConfig {
  LearnerKind learner = LearnerKind::kTwoL;
  long long budget = 100000;
  long long games_per_search = 10000;
  SearchOptions search;
  // Player whose best response is computed first in every iteration.
  int first_player = 0;
  // Initial strategies; sampled from the grammar when absent.
  std::array<std::optional<Program>, 2> initial;
  FinalMode final_mode = FinalMode::kLast;
  // Optional per-iteration performance metric of an added strategy.
  std::function<double(int player, const Program&)> metric;
  // Called after every hill-climbing run, including 2L re-searches.
  std::function<void(int player, const SearchTrace&)> on_search;
};

// Strategy added for `player` and the games played when it was added.
struct CurveSample {
  long long games_played = 0;
  int player = 0;
  int strategy_index = 0;
};

struct PpsroResult {
  explicit PpsroResult(const Game& game) : state(game) {}

  // Last strategy added per player.
  std::array<Program, 2> final_programs;
  // The returned solution per player according to PpsroConfig::final_mode.
  std::array<std::vector<std::pair<Program, double>>, 2> solution;
  PpsroState state;
  std::vector<CurveSample> samples;
};

// The meta-strategy `kind` prescribes for `player` in `state`.
MetaStrategy MetaFor(LearnerKind kind, const PpsroState& state, int player);

struct CoverInstance {
  int universe_size = 0;
  // sets[j]: universe elements covered by support member j.
  std::vector<std::vector<int>> sets;
};

// Greedy set cover: repeatedly take the set covering the most uncovered
// elements (lowest index on ties). Returns the chosen set indices in
// selection order. Throws Error if some element is in no set.
std::vector<int> GreedyCover(const CoverInstance& instance);

// Drops from state.support[player] every member not chosen by GreedyCover
// over the candidates it beat in `trace`. `trace_support` lists the strategy
// indices the trace was evaluated against. Leaves the support unchanged when
// no candidate was beaten. Returns the new uniform meta-strategy.
MetaStrategy PruneRedundant(PpsroState& state, int player,
                            const std::vector<int>& trace_support,
                            const SearchTrace& trace);

struct Enhancement {
  SearchResult result;
  std::vector<int> trace_support;
  int extra_searches = 0;
};

// Plays `found.best` against all of the opponent's strategies. While some
// strategy outside the opponent's support beats it, those strategies are
// restored to the support and the search is rerun from the current result
// with a fresh slice. Every game is charged to state.games_played.
Enhancement EnhancementCheck(PpsroState& state, int responder,
                             SearchResult found, std::vector<int> trace_support,
                             const PpsroConfig& config, Rng& rng);

// Runs the full learning loop until the budget is spent.
PpsroResult PpsroRun(const Game& game, const PpsroConfig& config,
                     std::uint64_t seed);

// One CSV line per half-iteration, with header.
std::string IterationLogCsv(const std::vector<IterationLog>& log);

}  // namespace metastrat

#endif  // METASTRAT_LEARNERS_H_
