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

#include "metastrat/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "metastrat/error.h"

namespace metastrat {
namespace {

constexpr double kPivotEps = 1e-12;

void CleanDistribution(std::vector<double>& p) {
  double total = 0.0;
  for (double& x : p) {
    if (x < 1e-13) x = 0.0;
    total += x;
  }
  for (double& x : p) x /= total;
}

}  // namespace

void MatrixGame::Validate() const {
  if (payoffs.empty() || payoffs[0].empty()) throw Error("matrix game is empty");
  for (const auto& row : payoffs) {
    if (row.size() != payoffs[0].size()) throw Error("matrix game is ragged");
    for (double x : row) {
      if (!std::isfinite(x)) throw Error("matrix game has a non-finite entry");
    }
  }
}

MatrixGame MatrixGame::NegatedTranspose() const {
  MatrixGame out;
  out.payoffs.assign(cols(), std::vector<double>(rows()));
  for (int r = 0; r < rows(); ++r) {
    for (int c = 0; c < cols(); ++c) out.payoffs[c][r] = -payoffs[r][c];
  }
  return out;
}

std::string MatrixGame::ToCsv() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& row : payoffs) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
  return out.str();
}

// With every entry shifted to be >= 1 the column player's problem becomes
//   maximize sum(q)  s.t.  A q <= 1, q >= 0,
// whose optimum is 1/v. The column mix is q/sum(q); the row mix is read off
// the slack columns of the final objective row (the dual solution).
Equilibrium SolveZeroSum(const MatrixGame& game) {
  game.Validate();
  const int m = game.rows();
  const int n = game.cols();

  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& row : game.payoffs) {
    for (double x : row) lowest = std::min(lowest, x);
  }
  const double shift = 1.0 - lowest;

  // Tableau rows 0..m-1 are constraints, row m is the objective. Columns
  // 0..n-1 are q, n..n+m-1 slacks, n+m the right-hand side.
  const int width = n + m + 1;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(width, 0.0));
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) t[r][c] = game.payoffs[r][c] + shift;
    t[r][n + r] = 1.0;
    t[r][n + m] = 1.0;
    basis[r] = n + r;
  }
  for (int c = 0; c < n; ++c) t[m][c] = -1.0;

  while (true) {
    // Bland: lowest-index improving column.
    int enter = -1;
    for (int c = 0; c < n + m; ++c) {
      if (t[m][c] < -kPivotEps) {
        enter = c;
        break;
      }
    }
    if (enter < 0) break;

    // Minimum ratio; ties go to the lowest-index basic variable.
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      if (t[r][enter] <= kPivotEps) continue;
      const double ratio = t[r][n + m] / t[r][enter];
      if (leave < 0 || ratio < best_ratio - kPivotEps ||
          (ratio <= best_ratio + kPivotEps && basis[r] < basis[leave])) {
        if (leave < 0 || ratio < best_ratio - kPivotEps) best_ratio = ratio;
        leave = r;
      }
    }
    if (leave < 0) throw Error("zero-sum LP unbounded; matrix must be finite");

    const double pivot = t[leave][enter];
    for (double& x : t[leave]) x /= pivot;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double factor = t[r][enter];
      if (factor == 0.0) continue;
      for (int c = 0; c < width; ++c) t[r][c] -= factor * t[leave][c];
    }
    basis[leave] = enter;
  }

  const double total = t[m][n + m];
  Equilibrium eq;
  eq.column.assign(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) eq.column[basis[r]] = t[r][n + m];
  }
  eq.row.assign(m, 0.0);
  for (int r = 0; r < m; ++r) eq.row[r] = t[m][n + r];
  CleanDistribution(eq.column);
  CleanDistribution(eq.row);
  eq.value = 1.0 / total - shift;
  return eq;
}

std::vector<double> ColumnPayoffs(const MatrixGame& game,
                                  const std::vector<double>& row_mix) {
  if (static_cast<int>(row_mix.size()) != game.rows()) {
    throw Error("row mix length does not match the matrix");
  }
  std::vector<double> out(game.cols(), 0.0);
  for (int r = 0; r < game.rows(); ++r) {
    for (int c = 0; c < game.cols(); ++c) out[c] += row_mix[r] * game.payoffs[r][c];
  }
  return out;
}

std::vector<double> RowPayoffs(const MatrixGame& game,
                               const std::vector<double>& column_mix) {
  if (static_cast<int>(column_mix.size()) != game.cols()) {
    throw Error("column mix length does not match the matrix");
  }
  std::vector<double> out(game.rows(), 0.0);
  for (int r = 0; r < game.rows(); ++r) {
    for (int c = 0; c < game.cols(); ++c) out[r] += column_mix[c] * game.payoffs[r][c];
  }
  return out;
}

}  // namespace metastrat
