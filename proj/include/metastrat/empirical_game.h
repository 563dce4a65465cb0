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

#ifndef METASTRAT_EMPIRICAL_GAME_H_
#define METASTRAT_EMPIRICAL_GAME_H_

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "metastrat/games.h"
#include "metastrat/grammar.h"

namespace metastrat {

struct StrategyHandle {
  int player = 0;
  // Insertion order within the player's strategy set, starting at 0.
  int index = 0;
  Program program;
};

// The empirical game: both players' strategy sets and the utility of every
// (row, column) pair for player 0. Strategies are never removed.
class PayoffTable {
 public:
  explicit PayoffTable(const Game& game) : game_(&game) {}

  const Game& game() const { return *game_; }
  int num_strategies(int player) const {
    return static_cast<int>(strategies_[player].size());
  }
  const Program& strategy(int player, int index) const {
    return strategies_[player][index];
  }
  const DecodedStrategy& decoded(int player, int index) const {
    return decoded_[player][index];
  }

  // Utility for player 0 of row strategy `row` against column `col`.
  int utility(int row, int col) const { return utility_[row][col]; }
  // Utility for `player` of its strategy `own` against the opponent's `other`.
  int UtilityFor(int player, int own, int other) const {
    return player == 0 ? utility_[own][other] : -utility_[other][own];
  }

  struct Added {
    StrategyHandle handle;
    int games_played = 0;
  };
  // Appends `program` and plays it once against every opposing strategy.
  Added AddStrategy(int player, Program program);

  // Throws Error when the player has no strategy yet.
  StrategyHandle LastStrategy(int player) const;

  // Player-0 utilities as a dense matrix.
  std::vector<std::vector<double>> Matrix() const;

  // Header row and column hold rendered programs.
  std::string ToCsv() const;

 private:
  const Game* game_;
  std::array<std::vector<Program>, 2> strategies_;
  std::array<std::vector<DecodedStrategy>, 2> decoded_;
  std::vector<std::vector<std::int8_t>> utility_;
};

// Mixed strategy over one player's empirical-game strategies, aligned with
// insertion order.
struct MetaStrategy {
  int player = 0;
  std::vector<double> probabilities;

  // Indices with positive probability, ascending.
  std::vector<int> Support() const;
  // Throws Error unless probabilities are >= 0, sum to 1 within 1e-9 and the
  // support is non-empty.
  void Validate() const;
};

// 1/|support| on each support index and 0 elsewhere.
MetaStrategy UniformMeta(const PayoffTable& table, int player,
                         const std::vector<int>& support);

// (program, probability) for every support member, in index order.
std::vector<std::pair<Program, double>> SupportProfile(const PayoffTable& table,
                                                       const MetaStrategy& meta);

}  // namespace metastrat

#endif  // METASTRAT_EMPIRICAL_GAME_H_
