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

#include "metastrat/empirical_game.h"

#include <cmath>
#include <set>
#include <sstream>

#include "metastrat/error.h"

namespace metastrat {
namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

PayoffTable::Added PayoffTable::AddStrategy(int player, Program program) {
  DecodedStrategy decoded = game_->Decode(player, program);
  int games = 0;
  if (player == 0) {
    std::vector<std::int8_t> row;
    row.reserve(decoded_[1].size());
    for (const DecodedStrategy& col : decoded_[1]) {
      row.push_back(static_cast<std::int8_t>(game_->Outcome(decoded, col).player0));
      ++games;
    }
    utility_.push_back(std::move(row));
  } else {
    for (std::size_t r = 0; r < decoded_[0].size(); ++r) {
      utility_[r].push_back(
          static_cast<std::int8_t>(game_->Outcome(decoded_[0][r], decoded).player0));
      ++games;
    }
  }
  strategies_[player].push_back(program);
  decoded_[player].push_back(std::move(decoded));
  return {{player, num_strategies(player) - 1, std::move(program)}, games};
}

StrategyHandle PayoffTable::LastStrategy(int player) const {
  if (strategies_[player].empty()) {
    throw Error("player " + std::to_string(player) + " has no strategies");
  }
  const int last = num_strategies(player) - 1;
  return {player, last, strategies_[player][last]};
}

std::vector<std::vector<double>> PayoffTable::Matrix() const {
  std::vector<std::vector<double>> out(num_strategies(0),
                                       std::vector<double>(num_strategies(1)));
  for (int r = 0; r < num_strategies(0); ++r) {
    for (int c = 0; c < num_strategies(1); ++c) out[r][c] = utility_[r][c];
  }
  return out;
}

std::string PayoffTable::ToCsv() const {
  std::ostringstream out;
  out << "row";
  for (const Program& col : strategies_[1]) out << ',' << CsvField(Render(col));
  out << '\n';
  for (int r = 0; r < num_strategies(0); ++r) {
    out << CsvField(Render(strategies_[0][r]));
    for (int c = 0; c < num_strategies(1); ++c) {
      out << ',' << static_cast<int>(utility_[r][c]);
    }
    out << '\n';
  }
  return out.str();
}

std::vector<int> MetaStrategy::Support() const {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(probabilities.size()); ++j) {
    if (probabilities[j] > 0.0) out.push_back(j);
  }
  return out;
}

void MetaStrategy::Validate() const {
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw Error("meta-strategy has a negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error("meta-strategy does not sum to 1");
  if (Support().empty()) throw Error("meta-strategy has empty support");
}

MetaStrategy UniformMeta(const PayoffTable& table, int player,
                         const std::vector<int>& support) {
  if (support.empty()) throw Error("uniform meta-strategy needs a non-empty support");
  const int n = table.num_strategies(player);
  const std::set<int> unique(support.begin(), support.end());
  for (int j : unique) {
    if (j < 0 || j >= n) throw Error("support index " + std::to_string(j) + " out of range");
  }
  MetaStrategy meta{player, std::vector<double>(n, 0.0)};
  for (int j : unique) meta.probabilities[j] = 1.0 / static_cast<double>(unique.size());
  return meta;
}

std::vector<std::pair<Program, double>> SupportProfile(const PayoffTable& table,
                                                       const MetaStrategy& meta) {
  std::vector<std::pair<Program, double>> out;
  for (int j : meta.Support()) {
    out.emplace_back(table.strategy(meta.player, j), meta.probabilities[j]);
  }
  return out;
}

}  // namespace metastrat
