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

#ifndef METASTRAT_GRAMMAR_H_
#define METASTRAT_GRAMMAR_H_

// Context-free grammars over whitespace-separated symbols, and programs as
// abstract syntax trees derived from them.
//
// Grammar text format, one rule per line:
//
//   # comment
//   S -> C | if B then C
//   C -> c1 | c2
//   B -> b1 | b2
//
// The left-hand side of the first rule is the start symbol. A bare symbol is
// a non-terminal iff it appears on some left-hand side; every other bare
// symbol is a terminal. `<X>` always names the non-terminal X and is an
// error when X has no rule. Repeating a left-hand side appends alternatives.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace metastrat {

using SymbolId = std::int32_t;
using Rng = std::mt19937_64;

class Grammar;
using GrammarPtr = std::shared_ptr<const Grammar>;

class Grammar {
 public:
  struct Rule {
    std::string lhs;
    std::vector<std::vector<std::string>> alternatives;
  };

  // Builds a grammar from already tokenized rules; the first rule's lhs is
  // the start symbol. Names of the form `<X>` in right-hand sides are
  // explicit non-terminal references.
  static GrammarPtr Create(const std::vector<Rule>& rules);

  int num_nonterminals() const { return num_nonterminals_; }
  int num_terminals() const {
    return static_cast<int>(names_.size()) - num_nonterminals_;
  }
  int num_symbols() const { return static_cast<int>(names_.size()); }

  // Non-terminals occupy ids [0, num_nonterminals()).
  bool IsTerminal(SymbolId id) const { return id >= num_nonterminals_; }
  const std::string& Name(SymbolId id) const { return names_[id]; }
  std::optional<SymbolId> Find(std::string_view name) const;
  SymbolId start() const { return 0; }

  std::span<const std::vector<SymbolId>> Productions(SymbolId nonterminal) const {
    return productions_[nonterminal];
  }

  // Height of the shortest derivation tree rooted at `id`; terminals are 0 and
  // a node whose children are all terminals has height 1.
  int MinHeight(SymbolId id) const {
    return IsTerminal(id) ? 0 : min_height_[id];
  }
  // Height needed to expand `nonterminal` with its `production`-th rule.
  int ProductionHeight(SymbolId nonterminal, int production) const {
    return production_height_[nonterminal][production];
  }

  std::vector<std::string> NonterminalNames() const;
  std::vector<std::string> TerminalNames() const;

  // Canonical text form, parseable by LoadGrammar.
  std::string ToText() const;

 private:
  Grammar() = default;

  int num_nonterminals_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<std::vector<SymbolId>>> productions_;
  std::vector<int> min_height_;
  std::vector<std::vector<int>> production_height_;
};

// Parses the text format described at the top of this file.
GrammarPtr LoadGrammar(std::string_view text);

struct GenerationLimits {
  int depth_cap = 12;
  int node_cap = 512;
  int max_retries = 10;
};

// A complete derivation tree stored in preorder. Immutable once built.
class Program {
 public:
  struct Node {
    SymbolId symbol;
    // Index into Productions(symbol); -1 for terminal leaves.
    std::int32_t production;
    // Number of nodes in the subtree rooted here, this node included.
    std::int32_t size;

    bool operator==(const Node&) const = default;
  };

  Program() = default;

  // Validates `nodes` against the grammar; throws Error when malformed.
  static Program FromNodes(GrammarPtr grammar, std::vector<Node> nodes);

  bool empty() const { return nodes_.empty(); }
  const Grammar& grammar() const { return *grammar_; }
  const GrammarPtr& grammar_ptr() const { return grammar_; }
  std::span<const Node> nodes() const { return nodes_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int Height() const;

  // Terminal symbols in left-to-right order.
  std::vector<SymbolId> Leaves() const;
  template <typename F>
  void ForEachLeaf(F&& f) const {
    for (const Node& n : nodes_) {
      if (n.production < 0) f(n.symbol);
    }
  }

  // Preorder indices of all non-terminal nodes, root included.
  std::vector<int> NonterminalNodes() const;

  // Structural equality; programs over different grammar objects are unequal.
  bool operator==(const Program& other) const {
    return grammar_ == other.grammar_ && nodes_ == other.nodes_;
  }

 private:
  friend class ProgramBuilder;
  Program(GrammarPtr grammar, std::vector<Node> nodes)
      : grammar_(std::move(grammar)), nodes_(std::move(nodes)) {}

  GrammarPtr grammar_;
  std::vector<Node> nodes_;
};

// Returns a description of the first violated structural invariant, or
// nullopt when `program` is a complete derivation under its grammar.
std::optional<std::string> CheckProgram(const Program& program);

// Expands the start symbol with uniformly chosen productions. Near the depth
// cap only productions that can still terminate are eligible.
Program SampleProgram(const GrammarPtr& grammar, const GenerationLimits& limits,
                      Rng& rng);

struct Mutation {
  Program program;
  // Preorder index of the non-terminal whose subtree was regenerated.
  int selected_node = -1;
  // False when every retry exceeded the node cap and the input was kept.
  bool regenerated = false;
};

// Picks one non-terminal node uniformly and regenerates its subtree with
// SampleProgram's expansion procedure. The input is never modified.
Mutation MutateWithInfo(const Program& program, const GenerationLimits& limits,
                        Rng& rng);
Program Mutate(const Program& program, const GenerationLimits& limits, Rng& rng);

// Regenerates the subtree rooted at preorder index `node`, which must be a
// non-terminal node.
Mutation RegenerateAt(const Program& program, int node,
                      const GenerationLimits& limits, Rng& rng);

// Terminal yield joined by single spaces, e.g. "if b1 then c1".
std::string Render(const Program& program);

// Bracketed derivation tree, e.g. "(S if (B b1) then (C c1))".
std::string RenderTree(const Program& program);

// Inverse of Render for the grammar's language. When the grammar is
// ambiguous the first production (in rule order) and leftmost shortest split
// that derive the text are chosen.
Program ParseProgram(const GrammarPtr& grammar, std::string_view text);

}  // namespace metastrat

#endif  // METASTRAT_GRAMMAR_H_
