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

#ifndef METASTRAT_TOURNAMENT_H_
#define METASTRAT_TOURNAMENT_H_

#include <array>
#include <string>
#include <vector>

#include "metastrat/games.h"
#include "metastrat/grammar.h"

namespace metastrat {

// One competitor: a program for each seat, e.g. the two final strategies of
// a synthesis run. In symmetric games both may be the same program.
struct TournamentEntry {
  std::string name;
  std::array<Program, 2> programs;
};

struct PairRecord {
  int wins = 0;
  int draws = 0;
  int losses = 0;

  int matches() const { return wins + draws + losses; }
  // (wins + draws / 2) / matches.
  double rate() const;
};

struct TournamentResult {
  std::vector<std::string> names;
  // records[a][b]: a's results against b. The diagonal is empty.
  std::vector<std::vector<PairRecord>> records;
  // Per entry: mean and standard deviation of its rates against the others.
  std::vector<double> mean_rate;
  std::vector<double> stddev_rate;

  double Rate(int a, int b) const { return records[a][b].rate(); }
  // row,col,wins,draws,losses,rate for every ordered pair a != b.
  std::string ToCsv() const;
  // Human-readable rate matrix.
  std::string RateTable() const;
};

double WinningRate(int wins, int draws, int losses);

// Every pair of entries plays `repetitions` matches. With `swap_seats` the
// matches are split evenly between the two seat assignments (repetitions must
// be even); otherwise the lower-indexed entry always takes seat 0.
TournamentResult RoundRobin(const Game& game,
                            const std::vector<TournamentEntry>& entries,
                            int repetitions, bool swap_seats);

}  // namespace metastrat

#endif  // METASTRAT_TOURNAMENT_H_
