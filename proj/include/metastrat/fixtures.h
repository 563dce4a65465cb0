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

#ifndef METASTRAT_FIXTURES_H_
#define METASTRAT_FIXTURES_H_

// Small hand-built Poachers & Rangers situations with known outcomes, used
// by `metastrat selfcheck` and the test suites.

#include <string>
#include <vector>

#include "metastrat/empirical_game.h"
#include "metastrat/games.h"
#include "metastrat/learners.h"
#include "metastrat/search.h"

namespace metastrat {

// Parses one instruction sequence for `player`, e.g. "defend[1] defend[2]".
Program ParseFor(const Game& game, int player, const std::string& text);

// 5-gate empirical game: rangers defend[2], defend[1,2,4], defend[1,2,3]
// against poachers attack[1], attack[1,2,3], attack[1,2,5].
PayoffTable BuildDoExampleTable(const Game& game);

// 2-gate IBR run whose searches are scripted so that the added strategies
// cycle defend[2] -> attack[1] -> defend[1] -> attack[2] -> defend[2].
PpsroResult RunIbrCycleExample(const Game& game);

struct PruningExample {
  PpsroState state;
  std::vector<int> trace_support;
  SearchTrace trace;
};
// 3-gate 2L state with rangers support {defend[2], defend[1,2]} and a poacher
// search trace that evaluated attack[1] and attack[2].
PruningExample BuildPruningExample(const Game& game);

struct FixtureReport {
  std::string name;
  bool passed = false;
  std::string detail;
};

FixtureReport CheckDoExample();
FixtureReport CheckIbrCycle();
FixtureReport CheckPruningExample();
std::vector<FixtureReport> RunSelfChecks();

}  // namespace metastrat

#endif  // METASTRAT_FIXTURES_H_
