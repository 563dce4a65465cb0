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

#ifndef METASTRAT_EQUILIBRIUM_H_
#define METASTRAT_EQUILIBRIUM_H_

// Exact-ish solution of two-player zero-sum matrix games by the simplex
// method with Bland's pivoting rule.

#include <string>
#include <vector>

namespace metastrat {

struct MatrixGame {
  // payoffs[r][c]: utility of the row player.
  std::vector<std::vector<double>> payoffs;

  int rows() const { return static_cast<int>(payoffs.size()); }
  int cols() const { return payoffs.empty() ? 0 : static_cast<int>(payoffs[0].size()); }
  // Throws Error on an empty, ragged or non-finite matrix.
  void Validate() const;
  MatrixGame NegatedTranspose() const;
  std::string ToCsv() const;
};

struct Equilibrium {
  std::vector<double> row;
  std::vector<double> column;
  double value = 0.0;
};

Equilibrium SolveZeroSum(const MatrixGame& game);

// Row-player payoff of every pure column against `row_mix`.
std::vector<double> ColumnPayoffs(const MatrixGame& game,
                                  const std::vector<double>& row_mix);
// Row-player payoff of every pure row against `column_mix`.
std::vector<double> RowPayoffs(const MatrixGame& game,
                               const std::vector<double>& column_mix);

}  // namespace metastrat

#endif  // METASTRAT_EQUILIBRIUM_H_
