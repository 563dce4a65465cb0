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

#include "metastrat/search.h"

#include <cmath>
#include <sstream>

#include "metastrat/error.h"

namespace metastrat {
namespace {

// Values are sums of p * u with u in {-1, 0, 1}; anything closer than this
// is a tie.
constexpr double kTieEps = 1e-9;

}  // namespace

SearchResult HillClimb(const Game& game, int player,
                       const std::optional<Program>& start,
                       const std::vector<std::pair<Program, double>>& meta,
                       const SearchBudget& budget, Rng& rng,
                       const SearchOptions& options) {
  if (meta.empty()) throw Error("hill climbing needs a non-empty meta-strategy");
  double total = 0.0;
  for (const auto& [program, p] : meta) {
    if (!(p > 0.0)) throw Error("meta-strategy entries must have p > 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error("meta-strategy must sum to 1");

  const long long width = static_cast<long long>(meta.size());
  long long evaluations = budget.max_games / width;
  if (budget.max_evaluations) evaluations = std::min(evaluations, *budget.max_evaluations);
  if (evaluations < 1) {
    throw BudgetError("budget of " + std::to_string(budget.max_games) +
                      " games cannot evaluate one candidate against " +
                      std::to_string(width) + " opponents");
  }

  std::vector<DecodedStrategy> opponents;
  std::vector<double> weights;
  opponents.reserve(meta.size());
  for (const auto& [program, p] : meta) {
    opponents.push_back(game.Decode(1 - player, program));
    weights.push_back(p);
  }

  SearchResult result;
  result.trace.records.reserve(static_cast<std::size_t>(evaluations));
  auto evaluate = [&](const Program& candidate) {
    const DecodedStrategy self = game.Decode(player, candidate);
    TraceRecord record{candidate, {}, 0.0};
    record.utilities.reserve(opponents.size());
    for (std::size_t j = 0; j < opponents.size(); ++j) {
      const int u = game.UtilityFor(player, self, opponents[j]);
      record.utilities.push_back(static_cast<std::int8_t>(u));
      record.expected += weights[j] * u;
    }
    result.games_played += width;
    ++result.evaluations;
    result.trace.records.push_back(std::move(record));
    return result.trace.records.back().expected;
  };

  Program current =
      start ? *start : SampleProgram(game.grammar(player), options.limits, rng);
  double current_value = evaluate(current);
  result.best = current;
  result.best_value = current_value;

  for (long long e = 1; e < evaluations; ++e) {
    Program neighbor = options.neighbor ? options.neighbor(current, rng)
                                        : Mutate(current, options.limits, rng);
    const double value = evaluate(neighbor);
    if (value > current_value + kTieEps) {
      current = std::move(neighbor);
      current_value = value;
    }
    if (value > result.best_value + kTieEps) {
      result.best = current;
      result.best_value = value;
    }
  }
  return result;
}

std::vector<int> BestRespondedSet(const SearchTrace& trace, int support_size) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(trace.records.size()); ++i) {
    const auto& u = trace.records[i].utilities;
    if (static_cast<int>(u.size()) != support_size) {
      throw Error("trace record " + std::to_string(i) + " has " +
                  std::to_string(u.size()) + " utilities, expected " +
                  std::to_string(support_size));
    }
    for (std::int8_t x : u) {
      if (x == -1) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

std::string TraceToCsv(const SearchTrace& trace) {
  std::ostringstream out;
  out << "candidate";
  const std::size_t k = trace.records.empty() ? 0 : trace.records[0].utilities.size();
  for (std::size_t j = 0; j < k; ++j) out << ",u" << j;
  out << ",expected\n";
  for (const TraceRecord& r : trace.records) {
    out << '"' << Render(r.candidate) << '"';
    for (std::int8_t u : r.utilities) out << ',' << static_cast<int>(u);
    out << ',' << r.expected << '\n';
  }
  return out.str();
}

}  // namespace metastrat
