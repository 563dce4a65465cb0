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

#ifndef METASTRAT_GAMES_H_
#define METASTRAT_GAMES_H_

// Deterministic one-shot two-player zero-sum games whose strategies are
// instruction-sequence programs.
//
//   Poachers & Rangers: rangers `defend[g]`, poachers `attack[g]`; rangers win
//     iff every attacked gate is defended.
//   Climbing Monkeys:   `climb[k]` lifts a monkey from branch k-1 to k and is a
//     no-op otherwise; the higher monkey wins, equal heights draw.
//   Blotto:             `add[b]` puts one troop on battlefield b until the
//     troop budget is spent; more battlefields won (strictly more troops) wins.

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "metastrat/grammar.h"

namespace metastrat {

enum class GameKind { kPoachersRangers, kClimbingMonkeys, kBlotto };

enum class Role { kRangers, kPoachers, kMonkey, kColonel };

std::string GameKindName(GameKind kind);
GameKind ParseGameKind(const std::string& name);

struct GameSpec {
  GameKind kind = GameKind::kPoachersRangers;
  // Gate count, branch count or battlefield count depending on `kind`.
  int size = 1;
  // Blotto troop budget; ignored by the other games.
  int troops = 0;
  // Player seat (0 or 1) of the rangers; the poachers take the other seat.
  int rangers_player = 0;

  static GameSpec PoachersRangers(int gates, int rangers_player = 0);
  static GameSpec ClimbingMonkeys(int branches);
  static GameSpec Blotto(int battlefields = 5, int troops = 7);

  // Throws ConfigError on invalid parameters.
  void Validate() const;
  Role RoleOf(int player) const;
};

// S -> I | I S with one `op[k]` instruction per gate, branch or battlefield.
GrammarPtr DefaultGrammar(const GameSpec& spec, Role role);

// Per-player utilities of one match. Each entry is computed from that
// player's own winning condition.
struct Utilities {
  int player0 = 0;
  int player1 = 0;
  int For(int player) const { return player == 0 ? player0 : player1; }
};

// Interpreted form of one program: a gate bit set, a height or an allocation.
struct DecodedStrategy {
  Role role = Role::kRangers;
  std::vector<std::uint64_t> gates;
  int height = 0;
  std::vector<int> troops;

  // Action summary: sorted gate list, {height}, or per-battlefield troops.
  std::vector<int> Summary() const;
};

struct MatchResult {
  Utilities utility;
  std::array<std::vector<int>, 2> actions;
};

class Game {
 public:
  using Observer = std::function<void(const Utilities&)>;

  explicit Game(GameSpec spec);

  const GameSpec& spec() const { return spec_; }
  const GrammarPtr& grammar(int player) const { return grammars_[player]; }
  Role RoleOf(int player) const { return spec_.RoleOf(player); }

  // Throws InterpretationError when `program` is not an instruction sequence
  // of the player's role.
  DecodedStrategy Decode(int player, const Program& program) const;

  // Evaluates one matchup; every call counts as one game played.
  Utilities Outcome(const DecodedStrategy& player0,
                    const DecodedStrategy& player1) const;

  MatchResult Play(const Program& player0, const Program& player1) const;

  // Utility of `program`, played in seat `player`, against `opponent`.
  int UtilityFor(int player, const DecodedStrategy& program,
                 const DecodedStrategy& opponent) const {
    return player == 0 ? Outcome(program, opponent).player0
                       : Outcome(opponent, program).player1;
  }

  // Total number of matchups evaluated by this instance.
  std::uint64_t plays() const { return plays_.load(std::memory_order_relaxed); }

  // Called once per evaluated matchup. Not thread-safe to install while
  // other threads are playing.
  void SetObserver(Observer observer) { observer_ = std::move(observer); }

 private:
  const std::vector<int>& ArgumentsFor(int player, const Grammar& g,
                                       std::vector<int>& scratch) const;

  GameSpec spec_;
  std::array<GrammarPtr, 2> grammars_;
  // Instruction argument per symbol id of grammars_[p]; -1 if not decodable.
  std::array<std::vector<int>, 2> arguments_;
  mutable std::atomic<std::uint64_t> plays_{0};
  Observer observer_;
};

struct ExpectedUtility {
  double value = 0.0;
  int games_played = 0;
};

// Probability-weighted utility of `program` (seat `player`) against a mixed
// opponent. Each opponent is played exactly once.
ExpectedUtility ComputeExpectedUtility(
    const Game& game, int player, const Program& program,
    const std::vector<std::pair<Program, double>>& opponents);

// Distinct gates named by a rangers program.
int DefendedGateCount(const Game& game, int player, const Program& program);
// Branch reached by a monkey program.
int ClimbHeight(const Game& game, int player, const Program& program);

}  // namespace metastrat

#endif  // METASTRAT_GAMES_H_
