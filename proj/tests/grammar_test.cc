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

#include <array>
#include <cmath>
#include <map>
#include <string>

#include "doctest.h"
#include "metastrat/error.h"
#include "metastrat/games.h"
#include "metastrat/grammar.h"

namespace metastrat {
namespace {

constexpr const char* kConditional = R"(
# S is the start symbol
S -> C | if B then C
C -> c1 | c2
B -> b1 | b2
)";

constexpr const char* kExpr = R"(
E -> T | T + E
T -> F | F * T
F -> x | y | ( E )
)";

int IndexOf(const Program& p, const std::string& name) {
  for (int i = 0; i < p.size(); ++i) {
    if (p.grammar().Name(p.nodes()[i].symbol) == name) return i;
  }
  return -1;
}

TEST_SUITE("grammar") {

TEST_CASE("conditional grammar has three non-terminals and six terminals") {
  const GrammarPtr g = LoadGrammar(kConditional);
  CHECK(g->num_nonterminals() == 3);
  CHECK(g->num_terminals() == 6);
  CHECK(g->Name(g->start()) == "S");
  CHECK(g->Productions(g->start()).size() == 2);
}

TEST_CASE("single rule grammar") {
  const GrammarPtr g = LoadGrammar("S -> c1");
  CHECK(g->num_nonterminals() == 1);
  CHECK(g->Productions(0).size() == 1);
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const Program p = SampleProgram(g, {1, 512, 10}, rng);
    CHECK(Render(p) == "c1");
    CHECK(Render(Mutate(p, {1, 512, 10}, rng)) == "c1");
  }
}

TEST_CASE("load errors") {
  CHECK_THROWS_AS(LoadGrammar("S -> <X> c1"), UndefinedSymbolError);
  CHECK_THROWS_AS(LoadGrammar("S -> a\nX ->"), NoProductionError);
  // X only rewrites to itself, so it can never finish.
  CHECK_THROWS_AS(LoadGrammar("S -> a | X\nX -> b X"), NoProductionError);
  try {
    LoadGrammar("S -> a\nT -> b | | c\n");
    FAIL("expected a parse error");
  } catch (const GrammarParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(LoadGrammar("S a b"), GrammarParseError);
  CHECK_THROWS_AS(LoadGrammar("# only a comment\n"), GrammarParseError);
}

TEST_CASE("infeasible depth") {
  const GrammarPtr g = LoadGrammar(kConditional);
  Rng rng(3);
  CHECK_THROWS_AS(SampleProgram(g, {1, 512, 10}, rng), InfeasibleDepthError);
  CHECK_NOTHROW(SampleProgram(g, {2, 512, 10}, rng));
}

TEST_CASE("samples at cap three take every conditional shape") {
  const GrammarPtr g = LoadGrammar(kConditional);
  Rng rng(11);
  std::map<std::string, int> seen;
  for (int i = 0; i < 2000; ++i) {
    const Program p = SampleProgram(g, {3, 512, 10}, rng);
    CHECK_FALSE(CheckProgram(p).has_value());
    CHECK(p.Height() <= 3);
    ++seen[Render(p)];
  }
  CHECK(seen.size() == 6);
  CHECK(seen.count("if b1 then c1") == 1);
}

TEST_CASE("production choice matches the enumerated distribution") {
  // Exact oracle by enumeration: S picks C or the if-form with 1/2 each, then
  // every inner choice is a fair coin. So c1, c2 -> 1/4, each if-form -> 1/8.
  const std::map<std::string, double> expected = {
      {"c1", 0.25},           {"c2", 0.25},
      {"if b1 then c1", 0.125}, {"if b1 then c2", 0.125},
      {"if b2 then c1", 0.125}, {"if b2 then c2", 0.125}};
  const GrammarPtr g = LoadGrammar(kConditional);
  Rng rng(20240101);
  const int n = 100000;
  std::map<std::string, int> counts;
  for (int i = 0; i < n; ++i) ++counts[Render(SampleProgram(g, {3, 512, 10}, rng))];
  REQUIRE(counts.size() == expected.size());
  double chi2 = 0.0;
  for (const auto& [text, p] : expected) {
    const double mean = n * p;
    const double sigma = std::sqrt(n * p * (1 - p));
    CHECK(std::abs(counts[text] - mean) <= 3 * sigma);
    chi2 += (counts[text] - mean) * (counts[text] - mean) / mean;
  }
  // 5 degrees of freedom, upper 0.1% point.
  CHECK(chi2 < 20.515);
}

TEST_CASE("mutating B in if b1 then c1") {
  const GrammarPtr g = LoadGrammar(kConditional);
  const Program p = ParseProgram(g, "if b1 then c1");
  const int b = IndexOf(p, "B");
  REQUIRE(b >= 0);
  Rng rng(5);
  std::map<std::string, int> seen;
  for (int i = 0; i < 200; ++i) {
    const Mutation m = RegenerateAt(p, b, {3, 512, 10}, rng);
    ++seen[Render(m.program)];
  }
  CHECK(seen.size() == 2);
  CHECK(seen.count("if b1 then c1") == 1);
  CHECK(seen.count("if b2 then c1") == 1);
}

TEST_CASE("mutation picks each non-terminal node uniformly") {
  const GrammarPtr g = LoadGrammar("S -> A B\nA -> x | y\nB -> C D\nC -> u\nD -> v | w");
  const Program p = ParseProgram(g, "x u v");
  REQUIRE(p.NonterminalNodes().size() == 5);
  std::map<int, int> counts;
  Rng rng(99);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[MutateWithInfo(p, {}, rng).selected_node];
  REQUIRE(counts.size() == 5);
  for (const auto& [node, c] : counts) {
    CAPTURE(node);
    CHECK(std::abs(static_cast<double>(c) / n - 0.2) <= 0.01);
  }
}

TEST_CASE("mutation leaves its input untouched and stays within caps") {
  const GrammarPtr g = DefaultGrammar(GameSpec::PoachersRangers(10), Role::kRangers);
  const GenerationLimits limits{8, 40, 10};
  Rng rng(17);
  Program p = SampleProgram(g, limits, rng);
  for (int i = 0; i < 5000; ++i) {
    const auto before = std::vector<Program::Node>(p.nodes().begin(), p.nodes().end());
    const Program next = Mutate(p, limits, rng);
    CHECK(std::equal(before.begin(), before.end(), p.nodes().begin(), p.nodes().end()));
    REQUIRE_FALSE(CheckProgram(next).has_value());
    CHECK(next.size() <= limits.node_cap);
    CHECK(next.Height() <= limits.depth_cap);
    p = next;
  }
}

TEST_CASE("identical seeds give identical programs") {
  const GrammarPtr g = LoadGrammar(kExpr);
  Rng a(42), b(42);
  for (int i = 0; i < 200; ++i) {
    const Program pa = Mutate(SampleProgram(g, {}, a), {}, a);
    const Program pb = Mutate(SampleProgram(g, {}, b), {}, b);
    CHECK(pa == pb);
  }
}

TEST_CASE("render examples") {
  const GrammarPtr g = LoadGrammar(kConditional);
  CHECK(Render(ParseProgram(g, "if b1 then c1")) == "if b1 then c1");
  CHECK(Render(ParseProgram(g, "c1")) == "c1");
  CHECK(RenderTree(ParseProgram(g, "c2")) == "(S (C c2))");
  CHECK_THROWS_AS(Render(Program()), Error);
  CHECK_THROWS_AS(ParseProgram(g, "if b1 then"), ProgramParseError);
  CHECK_THROWS_AS(ParseProgram(g, "c3"), ProgramParseError);
}

TEST_CASE("render then parse preserves structure") {
  const std::array<GrammarPtr, 3> grammars = {
      LoadGrammar(kConditional), LoadGrammar(kExpr),
      DefaultGrammar(GameSpec::PoachersRangers(10), Role::kPoachers)};
  Rng rng(2026);
  for (const GrammarPtr& g : grammars) {
    for (int i = 0; i < 1000; ++i) {
      const Program p = SampleProgram(g, {6, 512, 10}, rng);
      const Program back = ParseProgram(g, Render(p));
      REQUIRE(back == p);
    }
  }
}

TEST_CASE("grammar text round trip") {
  const GrammarPtr g = LoadGrammar(kExpr);
  const GrammarPtr again = LoadGrammar(g->ToText());
  CHECK(again->ToText() == g->ToText());
  CHECK(again->num_terminals() == g->num_terminals());
}

}  // TEST_SUITE

}  // namespace
}  // namespace metastrat
