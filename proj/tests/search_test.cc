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

#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "metastrat/error.h"
#include "metastrat/fixtures.h"
#include "metastrat/search.h"

namespace metastrat {
namespace {

using Profile = std::vector<std::pair<Program, double>>;

TEST_SUITE("search") {

TEST_CASE("finds the two-gate defence against both attacks") {
  const Game game(GameSpec::PoachersRangers(2));
  const Profile meta = {{ParseFor(game, 1, "attack[1]"), 0.5},
                        {ParseFor(game, 1, "attack[2]"), 0.5}};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const SearchResult r = HillClimb(game, 0, std::nullopt, meta, {400, {}}, rng);
    CHECK(r.best_value == doctest::Approx(1.0));
    CHECK(DefendedGateCount(game, 0, r.best) == 2);
  }
}

TEST_CASE("a winning start is kept and every evaluation is charged") {
  const Game game(GameSpec::PoachersRangers(3));
  const Program start = ParseFor(game, 0, "defend[1] defend[3]");
  const Profile meta = {{ParseFor(game, 1, "attack[3]"), 1.0}};
  Rng rng(2);
  const SearchResult r = HillClimb(game, 0, start, meta, {37, {}}, rng);
  CHECK(r.best == start);
  CHECK(r.best_value == 1.0);
  CHECK(r.evaluations == 37);
  CHECK(r.games_played == 37);
}

TEST_CASE("budget arithmetic") {
  const Game game(GameSpec::PoachersRangers(4));
  const Profile meta = {{ParseFor(game, 1, "attack[1]"), 0.5},
                        {ParseFor(game, 1, "attack[2] attack[4]"), 0.5}};
  Rng rng(3);
  const auto plays = game.plays();
  const SearchResult r = HillClimb(game, 0, std::nullopt, meta, {10, {}}, rng);
  CHECK(r.evaluations == 5);
  CHECK(r.games_played == 10);
  CHECK(r.trace.records.size() == 5);
  CHECK(game.plays() - plays == 10);
  // Leftover games that cannot pay for a whole evaluation are not spent.
  CHECK(HillClimb(game, 0, std::nullopt, meta, {11, {}}, rng).games_played == 10);
  CHECK(HillClimb(game, 0, std::nullopt, meta, {100, 3}, rng).evaluations == 3);
  CHECK_THROWS_AS(HillClimb(game, 0, std::nullopt, meta, {1, {}}, rng), BudgetError);
  CHECK_THROWS_AS(HillClimb(game, 0, std::nullopt, {}, {10, {}}, rng), Error);
}

TEST_CASE("trace properties on random searches") {
  Rng rng(4);
  const Game game(GameSpec::PoachersRangers(6));
  for (int trial = 0; trial < 50; ++trial) {
    Profile meta;
    const int k = 1 + trial % 4;
    for (int j = 0; j < k; ++j) {
      meta.push_back({SampleProgram(game.grammar(1), {}, rng), 1.0 / k});
    }
    const SearchResult r = HillClimb(game, 0, std::nullopt, meta, {200, {}}, rng);
    CHECK(r.games_played == r.evaluations * k);
    CHECK(r.games_played <= 200);
    double top = -2.0;
    int first_top = -1;
    for (int i = 0; i < static_cast<int>(r.trace.records.size()); ++i) {
      const TraceRecord& rec = r.trace.records[i];
      double sum = 0.0;
      for (int j = 0; j < k; ++j) {
        CHECK(std::abs(rec.utilities[j]) <= 1);
        CHECK(rec.utilities[j] ==
              game.Play(rec.candidate, meta[j].first).utility.player0);
        sum += meta[j].second * rec.utilities[j];
      }
      CHECK(rec.expected == doctest::Approx(sum));
      if (rec.expected > top + 1e-9) {
        top = rec.expected;
        first_top = i;
      }
    }
    CHECK(r.best_value == doctest::Approx(top));
    CHECK(r.best == r.trace.records[first_top].candidate);
  }
}

TEST_CASE("accepted candidates strictly improve") {
  // A scripted neighbour lets us see exactly which candidates were accepted:
  // the next neighbour is always built from the current incumbent.
  const Game game(GameSpec::PoachersRangers(4));
  const Profile meta = {{ParseFor(game, 1, "attack[1]"), 0.25},
                        {ParseFor(game, 1, "attack[2]"), 0.25},
                        {ParseFor(game, 1, "attack[3]"), 0.25},
                        {ParseFor(game, 1, "attack[4]"), 0.25}};
  std::vector<Program> incumbents;
  SearchOptions options;
  options.neighbor = [&](const Program& current, Rng& rng) {
    incumbents.push_back(current);
    return Mutate(current, {}, rng);
  };
  Rng rng(5);
  HillClimb(game, 0, ParseFor(game, 0, "defend[1]"), meta, {400, {}}, rng, options);
  double last = -2.0;
  for (std::size_t i = 0; i < incumbents.size(); ++i) {
    const double v = ComputeExpectedUtility(game, 0, incumbents[i], meta).value;
    if (i == 0 || !(incumbents[i] == incumbents[i - 1])) {
      CHECK(v > last);
      last = v;
    }
  }
}

TEST_CASE("same seed, same result") {
  const Game game(GameSpec::ClimbingMonkeys(8));
  const Profile meta = {{ParseFor(game, 1, "climb[1] climb[2]"), 1.0}};
  Rng a(6), b(6);
  const SearchResult x = HillClimb(game, 0, std::nullopt, meta, {300, {}}, a);
  const SearchResult y = HillClimb(game, 0, std::nullopt, meta, {300, {}}, b);
  CHECK(x.best == y.best);
  CHECK(TraceToCsv(x.trace) == TraceToCsv(y.trace));
}

TEST_CASE("best responded set") {
  const Game game(GameSpec::PoachersRangers(3));
  const PruningExample ex = BuildPruningExample(game);
  // Support is {defend[2], defend[1] defend[2]}; candidates attack[1..3].
  CHECK(BestRespondedSet(ex.trace, 2) == std::vector<int>{0, 1});

  SearchTrace draws;
  for (int i = 0; i < 4; ++i) draws.records.push_back({Program(), {0, 0, 0}, 0.0});
  CHECK(BestRespondedSet(draws, 3).empty());
  CHECK_THROWS_AS(BestRespondedSet(draws, 2), Error);

  Rng rng(7);
  std::uniform_int_distribution<int> u(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    SearchTrace t;
    const int k = 1 + trial % 5;
    for (int i = 0; i < 20; ++i) {
      TraceRecord rec;
      for (int j = 0; j < k; ++j) rec.utilities.push_back(static_cast<std::int8_t>(u(rng)));
      t.records.push_back(rec);
    }
    std::vector<int> expected;
    for (int i = 0; i < 20; ++i) {
      const auto& v = t.records[i].utilities;
      if (std::count(v.begin(), v.end(), -1) > 0) expected.push_back(i);
    }
    CHECK(BestRespondedSet(t, k) == expected);
  }
}

TEST_CASE("trace csv") {
  const Game game(GameSpec::PoachersRangers(2));
  SearchTrace t;
  t.records.push_back({ParseFor(game, 0, "defend[1]"), {1, -1}, 0.0});
  CHECK(TraceToCsv(t) == "candidate,u0,u1,expected\n\"defend[1]\",1,-1,0\n");
}

}  // TEST_SUITE

}  // namespace
}  // namespace metastrat
