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

#include "metastrat/tournament.h"

#include <iomanip>
#include <sstream>

#include "metastrat/error.h"
#include "metastrat/stats.h"

namespace metastrat {

double WinningRate(int wins, int draws, int losses) {
  const int total = wins + draws + losses;
  if (total == 0) throw Error("winning rate of zero matches");
  return (wins + 0.5 * draws) / total;
}

double PairRecord::rate() const { return WinningRate(wins, draws, losses); }

TournamentResult RoundRobin(const Game& game,
                            const std::vector<TournamentEntry>& entries,
                            int repetitions, bool swap_seats) {
  const int n = static_cast<int>(entries.size());
  if (n < 2) throw Error("a round robin needs at least 2 entries");
  if (repetitions < 1) throw Error("repetitions must be >= 1");
  if (swap_seats && repetitions % 2 != 0) {
    throw Error("repetitions must be even when seats are swapped");
  }

  TournamentResult result;
  result.records.assign(n, std::vector<PairRecord>(n));
  for (const auto& e : entries) result.names.push_back(e.name);

  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int rep = 0; rep < repetitions; ++rep) {
        const bool a_first = !swap_seats || rep < repetitions / 2;
        const int seat0 = a_first ? a : b;
        const int seat1 = a_first ? b : a;
        const Utilities u =
            game.Play(entries[seat0].programs[0], entries[seat1].programs[1]).utility;
        const int for_a = a_first ? u.player0 : u.player1;
        const int for_b = a_first ? u.player1 : u.player0;
        auto tally = [](PairRecord& r, int utility) {
          if (utility > 0) {
            ++r.wins;
          } else if (utility < 0) {
            ++r.losses;
          } else {
            ++r.draws;
          }
        };
        tally(result.records[a][b], for_a);
        tally(result.records[b][a], for_b);
      }
    }
  }

  for (int a = 0; a < n; ++a) {
    std::vector<double> rates;
    for (int b = 0; b < n; ++b) {
      if (a != b) rates.push_back(result.Rate(a, b));
    }
    result.mean_rate.push_back(Mean(rates));
    result.stddev_rate.push_back(StdDev(rates));
  }
  return result;
}

std::string TournamentResult::ToCsv() const {
  std::ostringstream out;
  out << "row,col,wins,draws,losses,rate\n";
  out << std::fixed << std::setprecision(6);
  for (std::size_t a = 0; a < names.size(); ++a) {
    for (std::size_t b = 0; b < names.size(); ++b) {
      if (a == b) continue;
      const PairRecord& r = records[a][b];
      out << names[a] << ',' << names[b] << ',' << r.wins << ',' << r.draws << ','
          << r.losses << ',' << r.rate() << '\n';
    }
  }
  return out.str();
}

std::string TournamentResult::RateTable() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << std::setw(12) << "";
  for (const auto& n : names) out << std::setw(10) << n;
  out << std::setw(14) << "total" << '\n';
  for (std::size_t a = 0; a < names.size(); ++a) {
    out << std::setw(12) << names[a];
    for (std::size_t b = 0; b < names.size(); ++b) {
      if (a == b) {
        out << std::setw(10) << "-";
      } else {
        out << std::setw(10) << records[a][b].rate();
      }
    }
    out << std::setw(8) << mean_rate[a] << " +-" << std::setw(4) << stddev_rate[a]
        << '\n';
  }
  return out.str();
}

}  // namespace metastrat
