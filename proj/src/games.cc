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

#include "metastrat/games.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <sstream>

#include "metastrat/error.h"

namespace metastrat {
namespace {

const char* OpcodeFor(Role role) {
  switch (role) {
    case Role::kRangers:
      return "defend";
    case Role::kPoachers:
      return "attack";
    case Role::kMonkey:
      return "climb";
    case Role::kColonel:
      return "add";
  }
  return "";
}

// Parses `op[k]`; returns k when the opcode matches, else -1.
int ParseInstruction(const std::string& name, std::string_view opcode) {
  if (name.size() < opcode.size() + 3) return -1;
  if (name.compare(0, opcode.size(), opcode) != 0) return -1;
  if (name[opcode.size()] != '[' || name.back() != ']') return -1;
  const char* first = name.data() + opcode.size() + 1;
  const char* last = name.data() + name.size() - 1;
  int value = 0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return -1;
  return value;
}

int Sign(int x) { return (x > 0) - (x < 0); }

}  // namespace

std::string GameKindName(GameKind kind) {
  switch (kind) {
    case GameKind::kPoachersRangers:
      return "poachers_rangers";
    case GameKind::kClimbingMonkeys:
      return "climbing_monkeys";
    case GameKind::kBlotto:
      return "blotto";
  }
  return "";
}

GameKind ParseGameKind(const std::string& name) {
  if (name == "poachers_rangers" || name == "pr") return GameKind::kPoachersRangers;
  if (name == "climbing_monkeys" || name == "cm") return GameKind::kClimbingMonkeys;
  if (name == "blotto") return GameKind::kBlotto;
  throw ConfigError("unknown game kind '" + name + "'");
}

GameSpec GameSpec::PoachersRangers(int gates, int rangers_player) {
  GameSpec spec{GameKind::kPoachersRangers, gates, 0, rangers_player};
  spec.Validate();
  return spec;
}

GameSpec GameSpec::ClimbingMonkeys(int branches) {
  GameSpec spec{GameKind::kClimbingMonkeys, branches, 0, 0};
  spec.Validate();
  return spec;
}

GameSpec GameSpec::Blotto(int battlefields, int troops) {
  GameSpec spec{GameKind::kBlotto, battlefields, troops, 0};
  spec.Validate();
  return spec;
}

void GameSpec::Validate() const {
  if (size < 1) throw ConfigError("game size must be >= 1");
  if (kind == GameKind::kBlotto && troops < 1) {
    throw ConfigError("blotto troop budget must be >= 1");
  }
  if (rangers_player != 0 && rangers_player != 1) {
    throw ConfigError("rangers_player must be 0 or 1");
  }
}

Role GameSpec::RoleOf(int player) const {
  switch (kind) {
    case GameKind::kPoachersRangers:
      return player == rangers_player ? Role::kRangers : Role::kPoachers;
    case GameKind::kClimbingMonkeys:
      return Role::kMonkey;
    case GameKind::kBlotto:
      return Role::kColonel;
  }
  return Role::kMonkey;
}

GrammarPtr DefaultGrammar(const GameSpec& spec, Role role) {
  spec.Validate();
  std::ostringstream text;
  text << "S -> I | I S\nI ->";
  const std::string op = OpcodeFor(role);
  for (int k = 1; k <= spec.size; ++k) {
    text << (k == 1 ? " " : " | ") << op << '[' << k << ']';
  }
  text << '\n';
  return LoadGrammar(text.str());
}

std::vector<int> DecodedStrategy::Summary() const {
  switch (role) {
    case Role::kRangers:
    case Role::kPoachers: {
      std::vector<int> out;
      for (std::size_t w = 0; w < gates.size(); ++w) {
        for (std::uint64_t bits = gates[w]; bits != 0; bits &= bits - 1) {
          out.push_back(static_cast<int>(w * 64) + std::countr_zero(bits) + 1);
        }
      }
      return out;
    }
    case Role::kMonkey:
      return {height};
    case Role::kColonel:
      return troops;
  }
  return {};
}

Game::Game(GameSpec spec) : spec_(spec) {
  spec_.Validate();
  for (int p = 0; p < 2; ++p) {
    grammars_[p] = DefaultGrammar(spec_, spec_.RoleOf(p));
    std::vector<int> scratch;
    arguments_[p] = ArgumentsFor(p, *grammars_[p], scratch);
  }
}

const std::vector<int>& Game::ArgumentsFor(int player, const Grammar& g,
                                           std::vector<int>& scratch) const {
  if (grammars_[player] && &g == grammars_[player].get() &&
      !arguments_[player].empty()) {
    return arguments_[player];
  }
  const std::string op = OpcodeFor(RoleOf(player));
  scratch.assign(g.num_symbols(), -1);
  for (SymbolId s = g.num_nonterminals(); s < g.num_symbols(); ++s) {
    const int k = ParseInstruction(g.Name(s), op);
    if (k >= 1 && k <= spec_.size) scratch[s] = k;
  }
  return scratch;
}

DecodedStrategy Game::Decode(int player, const Program& program) const {
  if (program.empty()) throw InterpretationError("empty program");
  std::vector<int> scratch;
  const std::vector<int>& args = ArgumentsFor(player, program.grammar(), scratch);

  DecodedStrategy out;
  out.role = RoleOf(player);
  switch (out.role) {
    case Role::kRangers:
    case Role::kPoachers:
      out.gates.assign((spec_.size + 63) / 64, 0);
      break;
    case Role::kColonel:
      out.troops.assign(spec_.size, 0);
      break;
    case Role::kMonkey:
      break;
  }
  int placed = 0;
  program.ForEachLeaf([&](SymbolId s) {
    const int k = args[s];
    if (k < 0) {
      throw InterpretationError("'" + program.grammar().Name(s) +
                                "' is not a " + OpcodeFor(out.role) +
                                " instruction of this game");
    }
    switch (out.role) {
      case Role::kRangers:
      case Role::kPoachers:
        out.gates[(k - 1) / 64] |= std::uint64_t{1} << ((k - 1) % 64);
        break;
      case Role::kMonkey:
        if (k == out.height + 1) out.height = k;
        break;
      case Role::kColonel:
        if (placed < spec_.troops) {
          ++out.troops[k - 1];
          ++placed;
        }
        break;
    }
  });
  return out;
}

Utilities Game::Outcome(const DecodedStrategy& player0,
                        const DecodedStrategy& player1) const {
  plays_.fetch_add(1, std::memory_order_relaxed);
  Utilities u;
  switch (spec_.kind) {
    case GameKind::kPoachersRangers: {
      const DecodedStrategy& rangers = spec_.rangers_player == 0 ? player0 : player1;
      const DecodedStrategy& poachers = spec_.rangers_player == 0 ? player1 : player0;
      bool all_defended = true;
      bool breached = false;
      for (std::size_t w = 0; w < rangers.gates.size(); ++w) {
        all_defended = all_defended && (poachers.gates[w] & ~rangers.gates[w]) == 0;
        breached = breached || (poachers.gates[w] & ~rangers.gates[w]) != 0;
      }
      const int rangers_u = all_defended ? 1 : -1;
      const int poachers_u = breached ? 1 : -1;
      u.player0 = spec_.rangers_player == 0 ? rangers_u : poachers_u;
      u.player1 = spec_.rangers_player == 0 ? poachers_u : rangers_u;
      break;
    }
    case GameKind::kClimbingMonkeys:
      u.player0 = Sign(player0.height - player1.height);
      u.player1 = Sign(player1.height - player0.height);
      break;
    case GameKind::kBlotto: {
      int won0 = 0;
      int won1 = 0;
      for (int b = 0; b < spec_.size; ++b) {
        won0 += player0.troops[b] > player1.troops[b] ? 1 : 0;
        won1 += player1.troops[b] > player0.troops[b] ? 1 : 0;
      }
      u.player0 = Sign(won0 - won1);
      u.player1 = Sign(won1 - won0);
      break;
    }
  }
  if (observer_) observer_(u);
  return u;
}

MatchResult Game::Play(const Program& player0, const Program& player1) const {
  const DecodedStrategy a = Decode(0, player0);
  const DecodedStrategy b = Decode(1, player1);
  MatchResult result;
  result.utility = Outcome(a, b);
  result.actions = {a.Summary(), b.Summary()};
  return result;
}

ExpectedUtility ComputeExpectedUtility(
    const Game& game, int player, const Program& program,
    const std::vector<std::pair<Program, double>>& opponents) {
  if (opponents.empty()) throw Error("expected utility needs >= 1 opponent");
  double total = 0.0;
  for (const auto& [opp, p] : opponents) {
    if (!(p > 0.0)) throw Error("opponent probabilities must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error("opponent probabilities must sum to 1");
  }
  const DecodedStrategy self = game.Decode(player, program);
  ExpectedUtility out;
  for (const auto& [opp, p] : opponents) {
    const DecodedStrategy other = game.Decode(1 - player, opp);
    out.value += p * game.UtilityFor(player, self, other);
    ++out.games_played;
  }
  return out;
}

int DefendedGateCount(const Game& game, int player, const Program& program) {
  const DecodedStrategy d = game.Decode(player, program);
  int count = 0;
  for (std::uint64_t w : d.gates) count += std::popcount(w);
  return count;
}

int ClimbHeight(const Game& game, int player, const Program& program) {
  return game.Decode(player, program).height;
}

}  // namespace metastrat
