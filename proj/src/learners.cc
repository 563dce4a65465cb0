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

#include "metastrat/learners.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "metastrat/equilibrium.h"
#include "metastrat/error.h"

namespace metastrat {
namespace {

std::string Upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

// Equilibrium probabilities below this are treated as outside the support.
constexpr double kSupportEps = 1e-9;

std::vector<double> Sparsify(std::vector<double> p) {
  double total = 0.0;
  for (double& x : p) {
    if (x < kSupportEps) x = 0.0;
    total += x;
  }
  for (double& x : p) x /= total;
  return p;
}

std::vector<std::pair<Program, double>> UniformOver(const PayoffTable& table,
                                                    int player) {
  std::vector<int> all(table.num_strategies(player));
  for (int j = 0; j < static_cast<int>(all.size()); ++j) all[j] = j;
  return SupportProfile(table, UniformMeta(table, player, all));
}

}  // namespace

std::string LearnerName(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kIBR:
      return "IBR";
    case LearnerKind::kFP:
      return "FP";
    case LearnerKind::kDO:
      return "DO";
    case LearnerKind::kTwoL:
      return "2L";
  }
  return "";
}

LearnerKind ParseLearnerKind(const std::string& name) {
  const std::string n = Upper(name);
  if (n == "IBR") return LearnerKind::kIBR;
  if (n == "FP") return LearnerKind::kFP;
  if (n == "DO") return LearnerKind::kDO;
  if (n == "2L" || n == "TWOL") return LearnerKind::kTwoL;
  throw ConfigError("unknown learner '" + name + "'");
}

std::string FinalModeName(FinalMode mode) {
  switch (mode) {
    case FinalMode::kLast:
      return "last";
    case FinalMode::kMixed:
      return "mixed";
    case FinalMode::kEquilibrium:
      return "equilibrium";
  }
  return "";
}

FinalMode ParseFinalMode(const std::string& name) {
  if (name == "last") return FinalMode::kLast;
  if (name == "mixed") return FinalMode::kMixed;
  if (name == "equilibrium") return FinalMode::kEquilibrium;
  throw ConfigError("unknown final strategy mode '" + name + "'");
}

MetaStrategy MetaFor(LearnerKind kind, const PpsroState& state, int player) {
  const PayoffTable& table = state.table;
  const int n = table.num_strategies(player);
  if (n == 0) throw Error("no strategies for player " + std::to_string(player));
  switch (kind) {
    case LearnerKind::kIBR:
      return UniformMeta(table, player, {n - 1});
    case LearnerKind::kFP: {
      std::vector<int> all(n);
      for (int j = 0; j < n; ++j) all[j] = j;
      return UniformMeta(table, player, all);
    }
    case LearnerKind::kDO: {
      const Equilibrium eq = SolveZeroSum(MatrixGame{table.Matrix()});
      return {player, Sparsify(player == 0 ? eq.row : eq.column)};
    }
    case LearnerKind::kTwoL:
      return UniformMeta(table, player, state.support[player]);
  }
  throw Error("unknown learner");
}

std::vector<int> GreedyCover(const CoverInstance& instance) {
  std::vector<char> covered(instance.universe_size, 0);
  for (const auto& set : instance.sets) {
    for (int e : set) {
      if (e < 0 || e >= instance.universe_size) throw Error("cover element out of range");
      covered[e] = 2;  // reachable
    }
  }
  for (char c : covered) {
    if (c != 2) throw Error("cover instance has an element in no set");
  }
  std::fill(covered.begin(), covered.end(), 0);

  std::vector<int> chosen;
  int remaining = instance.universe_size;
  while (remaining > 0) {
    int best = -1;
    int best_gain = 0;
    for (int j = 0; j < static_cast<int>(instance.sets.size()); ++j) {
      int gain = 0;
      for (int e : instance.sets[j]) gain += covered[e] ? 0 : 1;
      if (gain > best_gain) {
        best = j;
        best_gain = gain;
      }
    }
    chosen.push_back(best);
    for (int e : instance.sets[best]) {
      if (!covered[e]) {
        covered[e] = 1;
        --remaining;
      }
    }
  }
  return chosen;
}

MetaStrategy PruneRedundant(PpsroState& state, int player,
                            const std::vector<int>& trace_support,
                            const SearchTrace& trace) {
  const int k = static_cast<int>(trace_support.size());
  const std::vector<int> beaten = BestRespondedSet(trace, k);
  if (!beaten.empty()) {
    CoverInstance instance;
    instance.universe_size = static_cast<int>(beaten.size());
    instance.sets.resize(k);
    for (int e = 0; e < instance.universe_size; ++e) {
      const auto& u = trace.records[beaten[e]].utilities;
      for (int j = 0; j < k; ++j) {
        if (u[j] == -1) instance.sets[j].push_back(e);
      }
    }
    std::vector<int> helpful;
    for (int j : GreedyCover(instance)) helpful.push_back(trace_support[j]);
    std::sort(helpful.begin(), helpful.end());
    state.support[player] = std::move(helpful);
  }
  return UniformMeta(state.table, player, state.support[player]);
}

Enhancement EnhancementCheck(PpsroState& state, int responder,
                             SearchResult found, std::vector<int> trace_support,
                             const PpsroConfig& config, Rng& rng) {
  const int opponent = 1 - responder;
  const PayoffTable& table = state.table;
  const Game& game = table.game();
  Enhancement out{std::move(found), std::move(trace_support), 0};

  while (true) {
    const int pool = table.num_strategies(opponent);
    if (config.budget - state.games_played < pool) break;

    const DecodedStrategy self = game.Decode(responder, out.result.best);
    std::vector<int> restored;
    for (int j = 0; j < pool; ++j) {
      const int u = game.UtilityFor(opponent, table.decoded(opponent, j), self);
      if (u == 1 && !std::binary_search(out.trace_support.begin(),
                                        out.trace_support.end(), j)) {
        restored.push_back(j);
      }
    }
    state.games_played += pool;
    if (restored.empty()) break;

    auto& support = state.support[opponent];
    support.insert(support.end(), restored.begin(), restored.end());
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    const long long remaining = config.budget - state.games_played;
    if (remaining < static_cast<long long>(support.size())) break;
    const MetaStrategy meta = UniformMeta(table, opponent, support);
    SearchBudget slice{std::min(config.games_per_search, remaining), std::nullopt};
    SearchResult again = HillClimb(game, responder, out.result.best,
                                   SupportProfile(table, meta), slice, rng,
                                   config.search);
    state.games_played += again.games_played;
    if (config.on_search) config.on_search(responder, again.trace);
    out.result = std::move(again);
    out.trace_support = support;
    ++out.extra_searches;
  }
  return out;
}

PpsroResult PpsroRun(const Game& game, const PpsroConfig& config,
                     std::uint64_t seed) {
  if (config.budget < 1) {
    throw BudgetError("budget must cover the initial 1x1 empirical game");
  }
  if (config.games_per_search < 1) throw BudgetError("games_per_search must be >= 1");
  if (config.first_player != 0 && config.first_player != 1) {
    throw ConfigError("first_player must be 0 or 1");
  }

  Rng rng(seed);
  PpsroResult result(game);
  PpsroState& state = result.state;
  PayoffTable& table = state.table;

  for (int p = 0; p < 2; ++p) {
    Program initial = config.initial[p]
                          ? *config.initial[p]
                          : SampleProgram(game.grammar(p), config.search.limits, rng);
    state.games_played += table.AddStrategy(p, std::move(initial)).games_played;
    state.support[p] = {0};
  }
  for (int p = 0; p < 2; ++p) result.samples.push_back({state.games_played, p, 0});

  bool exhausted = false;
  while (!exhausted) {
    ++state.iteration;
    for (int step = 0; step < 2 && !exhausted; ++step) {
      const int k = step == 0 ? config.first_player : 1 - config.first_player;
      const int opponent = 1 - k;
      const long long before = state.games_played;

      const MetaStrategy meta = MetaFor(config.learner, state, opponent);
      std::vector<int> trace_support = meta.Support();
      const long long remaining = config.budget - state.games_played;
      if (remaining < static_cast<long long>(trace_support.size())) {
        exhausted = true;
        break;
      }

      SearchBudget slice{std::min(config.games_per_search, remaining), std::nullopt};
      SearchResult found =
          HillClimb(game, k, table.LastStrategy(k).program,
                    SupportProfile(table, meta), slice, rng, config.search);
      state.games_played += found.games_played;
      if (config.on_search) config.on_search(k, found.trace);

      IterationLog entry;
      entry.iteration = state.iteration;
      entry.player = k;
      entry.learner = config.learner;
      entry.support_before = static_cast<int>(trace_support.size());
      entry.searches = 1;

      Program added;
      if (config.learner == LearnerKind::kTwoL) {
        Enhancement enhanced = EnhancementCheck(state, k, std::move(found),
                                                std::move(trace_support), config, rng);
        entry.searches += enhanced.extra_searches;
        PruneRedundant(state, opponent, enhanced.trace_support, enhanced.result.trace);
        added = std::move(enhanced.result.best);
      } else {
        added = std::move(found.best);
      }
      if (config.learner == LearnerKind::kTwoL) {
        entry.support_after = static_cast<int>(state.support[opponent].size());
      } else {
        entry.support_after = entry.support_before;
      }

      const auto inserted = table.AddStrategy(k, added);
      state.games_played += inserted.games_played;
      if (config.learner == LearnerKind::kTwoL) {
        state.support[k].push_back(inserted.handle.index);
      }

      entry.games_consumed = state.games_played - before;
      entry.games_total = state.games_played;
      entry.added = Render(added);
      entry.metric = config.metric ? config.metric(k, added) : 0.0;
      state.log.push_back(std::move(entry));
      result.samples.push_back({state.games_played, k, inserted.handle.index});

      if (state.games_played >= config.budget) exhausted = true;
    }
  }

  for (int p = 0; p < 2; ++p) {
    result.final_programs[p] = table.LastStrategy(p).program;
    switch (config.final_mode) {
      case FinalMode::kLast:
        result.solution[p] = {{result.final_programs[p], 1.0}};
        break;
      case FinalMode::kMixed:
        result.solution[p] = UniformOver(table, p);
        break;
      case FinalMode::kEquilibrium:
        result.solution[p] =
            SupportProfile(table, MetaFor(LearnerKind::kDO, state, p));
        break;
    }
  }
  return result;
}

std::string IterationLogCsv(const std::vector<IterationLog>& log) {
  std::ostringstream out;
  out << "iteration,player,learner,support_before,support_after,searches,"
         "games_consumed,games_total,added,metric\n";
  for (const IterationLog& e : log) {
    out << e.iteration << ',' << e.player << ',' << LearnerName(e.learner) << ','
        << e.support_before << ',' << e.support_after << ',' << e.searches << ','
        << e.games_consumed << ',' << e.games_total << ",\"" << e.added << "\","
        << e.metric << '\n';
  }
  return out.str();
}

}  // namespace metastrat
