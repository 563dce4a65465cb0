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

#include "metastrat/cli.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "metastrat/error.h"
#include "metastrat/experiment.h"
#include "metastrat/fixtures.h"
#include "metastrat/learners.h"
#include "metastrat/tournament.h"

namespace metastrat {
namespace {

namespace fs = std::filesystem;

void WriteFile(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot write '" + path.string() + "'");
  file << contents;
}

std::string MetricLabel(GameKind kind) {
  switch (kind) {
    case GameKind::kPoachersRangers:
      return "gates defended";
    case GameKind::kClimbingMonkeys:
      return "branch reached";
    case GameKind::kBlotto:
      return "winning rate vs reference pool";
  }
  return "metric";
}

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string learner;
  std::string trace_path;
};

ExperimentConfig ResolveConfig(const CommonOptions& o) {
  ExperimentConfig config;
  if (!o.config_path.empty()) {
    config = LoadExperimentConfig(o.config_path);
  } else {
    config = ParseExperimentConfig(R"({"game": {"kind": "poachers_rangers", "size": 10}})");
  }
  if (o.seed) {
    const int runs = config.runs();
    config.seeds.clear();
    for (int r = 0; r < runs; ++r) config.seeds.push_back(*o.seed + r);
  }
  if (!o.out_dir.empty()) config.output_dir = o.out_dir;
  return config;
}

int Synth(const CommonOptions& o, std::ostream& out) {
  const ExperimentConfig config = ResolveConfig(o);
  const LearnerKind learner =
      o.learner.empty() ? config.learners.front() : ParseLearnerKind(o.learner);
  const Game game(config.game);
  const CurveMetric metric(game, config);
  PpsroConfig run = config.ToPpsroConfig(learner);
  run.metric = [&](int player, const Program& p) {
    return player == MetricPlayer(config.game) ? metric(p) : 0.0;
  };
  std::ostringstream trace;
  int searches = 0;
  if (!o.trace_path.empty()) {
    trace << "search,player,candidate,utilities,expected\n";
    run.on_search = [&](int player, const SearchTrace& t) {
      ++searches;
      for (const TraceRecord& r : t.records) {
        trace << searches << ',' << player << ",\"" << Render(r.candidate) << "\",";
        for (std::size_t j = 0; j < r.utilities.size(); ++j) {
          trace << (j ? " " : "") << static_cast<int>(r.utilities[j]);
        }
        trace << ',' << r.expected << '\n';
      }
    };
  }
  const PpsroResult result = PpsroRun(game, run, config.seeds.front());
  if (!o.trace_path.empty()) WriteFile(o.trace_path, trace.str());

  out << "learner " << LearnerName(learner) << ", seed " << config.seeds.front()
      << ", games " << result.state.games_played << ", iterations "
      << result.state.iteration << "\n";
  for (int p = 0; p < 2; ++p) {
    out << "player " << p << " final (" << FinalModeName(config.final_mode) << "):\n";
    for (const auto& [program, prob] : result.solution[p]) {
      out << "  " << prob << "  " << Render(program) << "\n";
    }
  }
  out << "metric " << metric(result.final_programs[MetricPlayer(config.game)]) << "\n";
  if (!o.out_dir.empty()) {
    const fs::path dir(config.output_dir);
    WriteFile(dir / "iterations.csv", IterationLogCsv(result.state.log));
    WriteFile(dir / "payoff_table.csv", result.state.table.ToCsv());
  }
  return kExitOk;
}

int Curves(const CommonOptions& o, std::ostream& out) {
  const ExperimentConfig config = ResolveConfig(o);
  const LearningCurves curves = RunLearningCurves(config);
  const fs::path dir(config.output_dir);
  WriteFile(dir / "curves.csv", curves.RowsCsv());
  WriteFile(dir / "curves_summary.csv", curves.SummaryCsv());
  WriteFile(dir / "curves_programs.csv", curves.ProgramsCsv());
  WriteFile(dir / "curves.svg",
            curves.Svg(GameKindName(config.game.kind), MetricLabel(config.game.kind)));
  out << curves.SummaryCsv();
  out << "wrote " << (dir / "curves.csv").string() << "\n";
  return kExitOk;
}

int Tournament(const CommonOptions& o, std::ostream& out) {
  const ExperimentConfig config = ResolveConfig(o);
  const Game game(config.game);
  std::vector<TournamentEntry> entries;
  if (!config.strategies.empty()) {
    for (const NamedPrograms& s : config.strategies) {
      entries.push_back({s.name,
                         {ParseFor(game, 0, s.programs[0]),
                          ParseFor(game, 1, s.programs[1])}});
    }
  } else {
    for (LearnerKind learner : config.learners) {
      const PpsroResult r =
          PpsroRun(game, config.ToPpsroConfig(learner), config.seeds.front());
      entries.push_back({LearnerName(learner), r.final_programs});
    }
  }
  const TournamentResult result =
      RoundRobin(game, entries, config.repetitions, config.swap_seats);
  out << result.RateTable();
  const fs::path dir(config.output_dir);
  WriteFile(dir / "tournament.csv", result.ToCsv());
  out << "wrote " << (dir / "tournament.csv").string() << "\n";
  return kExitOk;
}

int SelfCheck(std::ostream& out) {
  bool ok = true;
  for (const FixtureReport& r : RunSelfChecks()) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitFixtureFailure;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Programmatic strategy synthesis with PSRO-style learners", "metastrat"};
  app.require_subcommand(1);
  CommonOptions o;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config_path, "Experiment config (JSON)");
    cmd->add_option("--seed", o.seed, "Base random seed");
    cmd->add_option("--out", o.out_dir, "Output directory");
  };
  CLI::App* synth = app.add_subcommand("synth", "Run one synthesis and print the result");
  add_common(synth);
  synth->add_option("--learner", o.learner, "IBR, FP, DO or 2L");
  synth->add_option("--trace", o.trace_path, "Write every search trace to this CSV");
  CLI::App* curves = app.add_subcommand("curves", "Learning curves to CSV and SVG");
  add_common(curves);
  CLI::App* tournament = app.add_subcommand("tournament", "Round-robin tournament");
  add_common(tournament);
  CLI::App* selfcheck = app.add_subcommand("selfcheck", "Run known-answer fixtures");
  add_common(selfcheck);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*synth) return Synth(o, out);
    if (*curves) return Curves(o, out);
    if (*tournament) return Tournament(o, out);
    if (*selfcheck) return SelfCheck(out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace metastrat
