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

#include "metastrat/grammar.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "metastrat/error.h"

namespace metastrat {

class ProgramBuilder {
 public:
  static Program Make(GrammarPtr grammar, std::vector<Program::Node> nodes) {
    return Program(std::move(grammar), std::move(nodes));
  }
};

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

bool IsExplicitNonterminal(std::string_view token) {
  return token.size() > 2 && token.front() == '<' && token.back() == '>';
}

std::string StripBrackets(std::string_view token) {
  if (IsExplicitNonterminal(token)) {
    return std::string(token.substr(1, token.size() - 2));
  }
  return std::string(token);
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

GrammarPtr Grammar::Create(const std::vector<Rule>& rules) {
  if (rules.empty()) throw GrammarParseError(0, "grammar has no rules");

  std::shared_ptr<Grammar> g(new Grammar());
  std::unordered_map<std::string, SymbolId> ids;
  std::vector<std::vector<std::vector<std::string>>> raw;

  for (const Rule& rule : rules) {
    const std::string lhs = StripBrackets(rule.lhs);
    auto [it, inserted] = ids.emplace(lhs, static_cast<SymbolId>(g->names_.size()));
    if (inserted) {
      g->names_.push_back(lhs);
      raw.emplace_back();
    }
    auto& alts = raw[it->second];
    alts.insert(alts.end(), rule.alternatives.begin(), rule.alternatives.end());
  }
  g->num_nonterminals_ = static_cast<int>(g->names_.size());

  for (SymbolId nt = 0; nt < g->num_nonterminals_; ++nt) {
    if (raw[nt].empty()) {
      throw NoProductionError("non-terminal '" + g->names_[nt] +
                              "' has no production");
    }
  }

  g->productions_.resize(g->num_nonterminals_);
  for (SymbolId nt = 0; nt < g->num_nonterminals_; ++nt) {
    for (const auto& alt : raw[nt]) {
      if (alt.empty()) {
        throw NoProductionError("non-terminal '" + g->names_[nt] +
                                "' has an empty alternative");
      }
      std::vector<SymbolId> rhs;
      rhs.reserve(alt.size());
      for (const std::string& token : alt) {
        if (IsExplicitNonterminal(token)) {
          const std::string name = StripBrackets(token);
          auto found = ids.find(name);
          if (found == ids.end() || found->second >= g->num_nonterminals_) {
            throw UndefinedSymbolError("undefined symbol '" + name +
                                       "' in rule for '" + g->names_[nt] + "'");
          }
          rhs.push_back(found->second);
          continue;
        }
        auto [it, inserted] =
            ids.emplace(token, static_cast<SymbolId>(g->names_.size()));
        if (inserted) g->names_.push_back(token);
        rhs.push_back(it->second);
      }
      g->productions_[nt].push_back(std::move(rhs));
    }
  }

  // Least fixpoint of the minimum derivation height.
  g->min_height_.assign(g->num_nonterminals_, kUnreachable);
  auto height_of = [&](SymbolId s) {
    return s >= g->num_nonterminals_ ? 0 : g->min_height_[s];
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (SymbolId nt = 0; nt < g->num_nonterminals_; ++nt) {
      for (const auto& rhs : g->productions_[nt]) {
        int h = 0;
        for (SymbolId s : rhs) h = std::max(h, height_of(s));
        if (h < kUnreachable && h + 1 < g->min_height_[nt]) {
          g->min_height_[nt] = h + 1;
          changed = true;
        }
      }
    }
  }
  g->production_height_.resize(g->num_nonterminals_);
  for (SymbolId nt = 0; nt < g->num_nonterminals_; ++nt) {
    if (g->min_height_[nt] >= kUnreachable) {
      throw NoProductionError("non-terminal '" + g->names_[nt] +
                              "' has no terminating derivation");
    }
    for (const auto& rhs : g->productions_[nt]) {
      int h = 0;
      for (SymbolId s : rhs) h = std::max(h, height_of(s));
      g->production_height_[nt].push_back(h + 1);
    }
  }
  return g;
}

std::optional<SymbolId> Grammar::Find(std::string_view name) const {
  for (SymbolId i = 0; i < num_symbols(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> Grammar::NonterminalNames() const {
  return {names_.begin(), names_.begin() + num_nonterminals_};
}

std::vector<std::string> Grammar::TerminalNames() const {
  return {names_.begin() + num_nonterminals_, names_.end()};
}

std::string Grammar::ToText() const {
  std::ostringstream out;
  for (SymbolId nt = 0; nt < num_nonterminals_; ++nt) {
    out << names_[nt] << " ->";
    bool first = true;
    for (const auto& rhs : productions_[nt]) {
      out << (first ? " " : " | ");
      first = false;
      for (std::size_t k = 0; k < rhs.size(); ++k) {
        if (k > 0) out << ' ';
        out << names_[rhs[k]];
      }
    }
    out << '\n';
  }
  return out.str();
}

GrammarPtr LoadGrammar(std::string_view text) {
  std::vector<Grammar::Rule> rules;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (SplitWhitespace(line).empty()) continue;

    const auto arrow = line.find("->");
    if (arrow == std::string::npos) {
      throw GrammarParseError(line_no, "expected '<non-terminal> -> ...'");
    }
    const auto lhs_tokens = SplitWhitespace(std::string_view(line).substr(0, arrow));
    if (lhs_tokens.size() != 1) {
      throw GrammarParseError(line_no,
                              "left-hand side must be exactly one symbol");
    }
    Grammar::Rule rule{lhs_tokens[0], {}};
    const std::string rhs_text = line.substr(arrow + 2);
    if (!SplitWhitespace(rhs_text).empty()) {
      std::size_t begin = 0;
      while (true) {
        const auto bar = rhs_text.find('|', begin);
        auto alt = SplitWhitespace(
            std::string_view(rhs_text).substr(begin, bar == std::string::npos
                                                         ? std::string::npos
                                                         : bar - begin));
        if (alt.empty()) throw GrammarParseError(line_no, "empty alternative");
        for (const auto& tok : alt) {
          if (tok == "->") throw GrammarParseError(line_no, "stray '->'");
        }
        rule.alternatives.push_back(std::move(alt));
        if (bar == std::string::npos) break;
        begin = bar + 1;
      }
    }
    rules.push_back(std::move(rule));
  }
  if (rules.empty()) throw GrammarParseError(line_no, "grammar has no rules");
  return Grammar::Create(rules);
}

// ---------------------------------------------------------------------------
// Program

Program Program::FromNodes(GrammarPtr grammar, std::vector<Node> nodes) {
  Program p = ProgramBuilder::Make(std::move(grammar), std::move(nodes));
  if (auto problem = CheckProgram(p)) throw Error("invalid program: " + *problem);
  return p;
}

int Program::Height() const {
  if (nodes_.empty()) return 0;
  // Walk the preorder sequence keeping, for each open ancestor, its end index.
  int best = 0;
  std::vector<int> ends;
  for (int i = 0; i < size(); ++i) {
    while (!ends.empty() && ends.back() <= i) ends.pop_back();
    if (nodes_[i].production >= 0) {
      ends.push_back(i + nodes_[i].size);
      best = std::max(best, static_cast<int>(ends.size()));
    }
  }
  return best;
}

std::vector<SymbolId> Program::Leaves() const {
  std::vector<SymbolId> out;
  ForEachLeaf([&](SymbolId s) { out.push_back(s); });
  return out;
}

std::vector<int> Program::NonterminalNodes() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (nodes_[i].production >= 0) out.push_back(i);
  }
  return out;
}

namespace {

// Returns the index one past the subtree at `at`, or -1 when malformed.
int CheckSubtree(const Grammar& g, std::span<const Program::Node> nodes, int at,
                 std::string* problem) {
  if (at >= static_cast<int>(nodes.size())) {
    *problem = "truncated node sequence";
    return -1;
  }
  const Program::Node& n = nodes[at];
  if (n.symbol < 0 || n.symbol >= g.num_symbols()) {
    *problem = "symbol id out of range at node " + std::to_string(at);
    return -1;
  }
  if (g.IsTerminal(n.symbol)) {
    if (n.production != -1 || n.size != 1) {
      *problem = "terminal node " + std::to_string(at) + " is not a leaf";
      return -1;
    }
    return at + 1;
  }
  const auto prods = g.Productions(n.symbol);
  if (n.production < 0 || n.production >= static_cast<int>(prods.size())) {
    *problem = "non-terminal leaf or bad production at node " + std::to_string(at);
    return -1;
  }
  int next = at + 1;
  for (SymbolId expected : prods[n.production]) {
    if (next >= static_cast<int>(nodes.size()) || nodes[next].symbol != expected) {
      *problem = "children of node " + std::to_string(at) +
                 " do not match its production";
      return -1;
    }
    next = CheckSubtree(g, nodes, next, problem);
    if (next < 0) return -1;
  }
  if (n.size != next - at) {
    *problem = "wrong subtree size at node " + std::to_string(at);
    return -1;
  }
  return next;
}

class Expander {
 public:
  Expander(const Grammar& g, Rng& rng) : g_(g), rng_(rng) {}

  // Appends a random subtree for `nt` to `out`. Returns false when the node
  // budget is exhausted.
  bool Expand(SymbolId nt, int depth, std::size_t node_budget,
              std::vector<Program::Node>& out) {
    const auto prods = g_.Productions(nt);
    eligible_.clear();
    for (int k = 0; k < static_cast<int>(prods.size()); ++k) {
      if (g_.ProductionHeight(nt, k) <= depth) eligible_.push_back(k);
    }
    if (eligible_.empty()) {
      throw InfeasibleDepthError("'" + g_.Name(nt) + "' needs height " +
                                 std::to_string(g_.MinHeight(nt)) +
                                 " but only " + std::to_string(depth) +
                                 " remains");
    }
    std::uniform_int_distribution<std::size_t> pick(0, eligible_.size() - 1);
    const int prod = eligible_[pick(rng_)];

    const std::size_t self = out.size();
    out.push_back({nt, prod, 0});
    if (out.size() > node_budget) return false;
    for (SymbolId child : prods[prod]) {
      if (g_.IsTerminal(child)) {
        out.push_back({child, -1, 1});
        if (out.size() > node_budget) return false;
      } else if (!Expand(child, depth - 1, node_budget, out)) {
        return false;
      }
    }
    out[self].size = static_cast<std::int32_t>(out.size() - self);
    return true;
  }

 private:
  const Grammar& g_;
  Rng& rng_;
  std::vector<int> eligible_;
};

}  // namespace

std::optional<std::string> CheckProgram(const Program& program) {
  if (program.empty()) return "empty program";
  std::string problem;
  const int end = CheckSubtree(program.grammar(), program.nodes(), 0, &problem);
  if (end < 0) return problem;
  if (end != program.size()) return "trailing nodes after the root subtree";
  if (program.nodes()[0].symbol != program.grammar().start()) {
    return "root is not the start symbol";
  }
  return std::nullopt;
}

Program SampleProgram(const GrammarPtr& grammar, const GenerationLimits& limits,
                      Rng& rng) {
  if (limits.depth_cap < 1) throw InfeasibleDepthError("depth cap must be >= 1");
  const SymbolId start = grammar->start();
  if (grammar->MinHeight(start) > limits.depth_cap) {
    throw InfeasibleDepthError("start symbol needs height " +
                               std::to_string(grammar->MinHeight(start)) +
                               " > depth cap " + std::to_string(limits.depth_cap));
  }
  Expander expander(*grammar, rng);
  std::vector<Program::Node> nodes;
  for (int attempt = 0; attempt <= limits.max_retries; ++attempt) {
    nodes.clear();
    if (expander.Expand(start, limits.depth_cap,
                        static_cast<std::size_t>(limits.node_cap), nodes)) {
      return ProgramBuilder::Make(grammar, std::move(nodes));
    }
  }
  throw SizeCapError("could not sample a program within " +
                     std::to_string(limits.node_cap) + " nodes");
}

Mutation RegenerateAt(const Program& program, int node,
                      const GenerationLimits& limits, Rng& rng) {
  const auto nodes = program.nodes();
  const Program::Node& target = nodes[node];
  if (target.production < 0) throw Error("cannot regenerate a terminal node");

  // Ancestors of the target, root first. The cap bounds the whole program,
  // so the subtree may only use the height left below its position.
  std::vector<int> ancestors;
  for (int at = 0; at != node;) {
    ancestors.push_back(at);
    int child = at + 1;
    while (!(child <= node && node < child + nodes[child].size)) {
      child += nodes[child].size;
    }
    at = child;
  }
  const int old_size = target.size;
  const std::size_t rest = nodes.size() - static_cast<std::size_t>(old_size);
  const int depth =
      std::max(limits.depth_cap - static_cast<int>(ancestors.size()),
               program.grammar().MinHeight(target.symbol));
  Expander expander(program.grammar(), rng);
  std::vector<Program::Node> subtree;

  for (int attempt = 0; attempt <= limits.max_retries; ++attempt) {
    subtree.clear();
    const std::size_t budget =
        static_cast<std::size_t>(limits.node_cap) > rest
            ? static_cast<std::size_t>(limits.node_cap) - rest
            : 0;
    if (!expander.Expand(target.symbol, depth, budget, subtree)) continue;

    std::vector<Program::Node> out;
    out.reserve(rest + subtree.size());
    out.insert(out.end(), nodes.begin(), nodes.begin() + node);
    out.insert(out.end(), subtree.begin(), subtree.end());
    out.insert(out.end(), nodes.begin() + node + old_size, nodes.end());
    const int delta = static_cast<int>(subtree.size()) - old_size;
    for (int at : ancestors) out[at].size += delta;
    return {ProgramBuilder::Make(program.grammar_ptr(), std::move(out)), node,
            true};
  }
  return {program, node, false};
}

Mutation MutateWithInfo(const Program& program, const GenerationLimits& limits,
                        Rng& rng) {
  // Non-terminal nodes are counted on the fly to avoid allocating an index.
  int count = 0;
  for (const auto& n : program.nodes()) count += n.production >= 0 ? 1 : 0;
  std::uniform_int_distribution<int> pick(0, count - 1);
  int chosen = pick(rng);
  int node = 0;
  for (; node < program.size(); ++node) {
    if (program.nodes()[node].production >= 0 && chosen-- == 0) break;
  }
  return RegenerateAt(program, node, limits, rng);
}

Program Mutate(const Program& program, const GenerationLimits& limits, Rng& rng) {
  return MutateWithInfo(program, limits, rng).program;
}

std::string Render(const Program& program) {
  if (program.empty()) throw Error("cannot render an empty program");
  if (auto problem = CheckProgram(program)) {
    throw Error("cannot render incomplete program: " + *problem);
  }
  std::string out;
  program.ForEachLeaf([&](SymbolId s) {
    if (!out.empty()) out += ' ';
    out += program.grammar().Name(s);
  });
  return out;
}

std::string RenderTree(const Program& program) {
  if (program.empty()) throw Error("cannot render an empty program");
  std::string out;
  std::vector<int> ends;
  const auto nodes = program.nodes();
  for (int i = 0; i < program.size(); ++i) {
    while (!ends.empty() && ends.back() <= i) {
      out += ')';
      ends.pop_back();
    }
    if (i > 0) out += ' ';
    if (nodes[i].production >= 0) {
      out += '(';
      ends.push_back(i + nodes[i].size);
    }
    out += program.grammar().Name(nodes[i].symbol);
  }
  out.append(ends.size(), ')');
  return out;
}

// ---------------------------------------------------------------------------
// Parsing a rendered program back into its derivation tree.

namespace {

class ChartParser {
 public:
  ChartParser(const Grammar& g, std::vector<SymbolId> tokens)
      : g_(g), tokens_(std::move(tokens)), n_(static_cast<int>(tokens_.size())) {
    derives_.assign(static_cast<std::size_t>(g_.num_nonterminals()) * (n_ + 1) * (n_ + 1), 0);
    for (int len = 1; len <= n_; ++len) {
      for (int i = 0; i + len <= n_; ++i) {
        // Unit productions over the same span need a fixpoint.
        bool changed = true;
        while (changed) {
          changed = false;
          for (SymbolId nt = 0; nt < g_.num_nonterminals(); ++nt) {
            if (Derives(nt, i, i + len)) continue;
            for (const auto& rhs : g_.Productions(nt)) {
              if (MatchSequence(rhs, 0, i, i + len)) {
                derives_[Index(nt, i, i + len)] = 1;
                changed = true;
                break;
              }
            }
          }
        }
      }
    }
  }

  bool Derives(SymbolId s, int i, int j) const {
    if (g_.IsTerminal(s)) return j == i + 1 && tokens_[i] == s;
    return derives_[Index(s, i, j)] != 0;
  }

  void Build(SymbolId s, int i, int j, std::vector<Program::Node>& out) {
    if (g_.IsTerminal(s)) {
      out.push_back({s, -1, 1});
      return;
    }
    const auto prods = g_.Productions(s);
    for (int k = 0; k < static_cast<int>(prods.size()); ++k) {
      std::vector<int> cuts;
      if (!FindSplit(prods[k], 0, i, j, cuts)) continue;
      // Unit cycles (A -> B -> A over one span) would recurse forever.
      if (prods[k].size() == 1 && !g_.IsTerminal(prods[k][0])) {
        auto key = std::make_tuple(prods[k][0], i, j);
        if (open_.contains(key)) continue;
      }
      const std::size_t self = out.size();
      out.push_back({s, k, 0});
      open_.insert({s, i, j});
      int from = i;
      for (std::size_t c = 0; c < prods[k].size(); ++c) {
        Build(prods[k][c], from, cuts[c], out);
        from = cuts[c];
      }
      open_.erase({s, i, j});
      out[self].size = static_cast<std::int32_t>(out.size() - self);
      return;
    }
    throw ProgramParseError("no derivation for '" + g_.Name(s) + "'");
  }

 private:
  std::size_t Index(SymbolId nt, int i, int j) const {
    return (static_cast<std::size_t>(nt) * (n_ + 1) + i) * (n_ + 1) + j;
  }

  // Whether rhs[pos..] derives tokens [i, j), every symbol taking >= 1 token.
  bool MatchSequence(const std::vector<SymbolId>& rhs, std::size_t pos, int i,
                     int j) const {
    const int symbols_left = static_cast<int>(rhs.size() - pos);
    if (j - i < symbols_left) return false;
    if (symbols_left == 1) return Derives(rhs[pos], i, j);
    for (int cut = i + 1; cut <= j - (symbols_left - 1); ++cut) {
      if (Derives(rhs[pos], i, cut) && MatchSequence(rhs, pos + 1, cut, j)) {
        return true;
      }
    }
    return false;
  }

  bool FindSplit(const std::vector<SymbolId>& rhs, std::size_t pos, int i, int j,
                 std::vector<int>& cuts) const {
    const int symbols_left = static_cast<int>(rhs.size() - pos);
    if (j - i < symbols_left) return false;
    if (symbols_left == 1) {
      if (!Derives(rhs[pos], i, j)) return false;
      cuts.push_back(j);
      return true;
    }
    for (int cut = i + 1; cut <= j - (symbols_left - 1); ++cut) {
      if (!Derives(rhs[pos], i, cut)) continue;
      cuts.push_back(cut);
      if (FindSplit(rhs, pos + 1, cut, j, cuts)) return true;
      cuts.pop_back();
    }
    return false;
  }

  const Grammar& g_;
  std::vector<SymbolId> tokens_;
  int n_;
  std::vector<char> derives_;
  std::set<std::tuple<SymbolId, int, int>> open_;
};

}  // namespace

Program ParseProgram(const GrammarPtr& grammar, std::string_view text) {
  std::vector<SymbolId> tokens;
  for (const std::string& word : SplitWhitespace(text)) {
    auto id = grammar->Find(word);
    if (!id || !grammar->IsTerminal(*id)) {
      throw ProgramParseError("'" + word + "' is not a terminal of the grammar");
    }
    tokens.push_back(*id);
  }
  if (tokens.empty()) throw ProgramParseError("empty program text");
  const int n = static_cast<int>(tokens.size());
  ChartParser parser(*grammar, std::move(tokens));
  if (!parser.Derives(grammar->start(), 0, n)) {
    throw ProgramParseError("text is not derivable from '" +
                            grammar->Name(grammar->start()) + "'");
  }
  std::vector<Program::Node> nodes;
  parser.Build(grammar->start(), 0, n, nodes);
  return Program::FromNodes(grammar, std::move(nodes));
}

}  // namespace metastrat
