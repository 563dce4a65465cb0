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

#ifndef METASTRAT_SEARCH_H_
#define METASTRAT_SEARCH_H_

// First-improvement hill climbing in program space against a fixed mixed
// opponent, keeping the per-candidate evaluation trace.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metastrat/games.h"
#include "metastrat/grammar.h"

namespace metastrat {

struct SearchBudget {
  // Games available; every candidate evaluation costs |meta| games.
  long long max_games = 0;
  std::optional<long long> max_evaluations;
};

struct TraceRecord {
  Program candidate;
  // Candidate's utility against each meta entry, in meta order.
  std::vector<std::int8_t> utilities;
  double expected = 0.0;
};

struct SearchTrace {
  std::vector<TraceRecord> records;
};

struct SearchResult {
  Program best;
  double best_value = 0.0;
  long long games_played = 0;
  long long evaluations = 0;
  SearchTrace trace;
};

using NeighborFn = std::function<Program(const Program&, Rng&)>;

struct SearchOptions {
  GenerationLimits limits;
  // Replaces Mutate as the neighborhood operator when set.
  NeighborFn neighbor;
};

// `meta` holds the support of the opponent's meta-strategy with positive
// probabilities summing to 1. Starts from a random program when `start` is
// empty. Throws BudgetError if the budget cannot pay for one evaluation.
SearchResult HillClimb(const Game& game, int player,
                       const std::optional<Program>& start,
                       const std::vector<std::pair<Program, double>>& meta,
                       const SearchBudget& budget, Rng& rng,
                       const SearchOptions& options = {});

// Indices of trace candidates beaten (utility -1) by at least one of the
// `support_size` meta entries.
std::vector<int> BestRespondedSet(const SearchTrace& trace, int support_size);

// CSV dump: candidate, u_0..u_{k-1}, expected.
std::string TraceToCsv(const SearchTrace& trace);

}  // namespace metastrat

#endif  // METASTRAT_SEARCH_H_
