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

#include "metastrat/experiment.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <iomanip>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "metastrat/error.h"
#include "metastrat/stats.h"
#include "metastrat/svg_chart.h"

namespace metastrat {
namespace {

using nlohmann::json;

template <typename T>
T Get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

std::string CsvQuoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<long long> DefaultSchedule(long long budget) {
  std::vector<long long> out;
  for (long long decade = 1; decade <= budget; decade *= 10) {
    for (long long m : {1, 2, 5}) {
      if (m * decade <= budget) out.push_back(m * decade);
    }
  }
  if (out.empty() || out.back() != budget) out.push_back(budget);
  return out;
}

void ExperimentConfig::Validate() const {
  game.Validate();
  if (learners.empty()) throw ConfigError("at least one learner is required");
  if (seeds.empty()) throw ConfigError("runs must be >= 1");
  if (budget < 1) throw ConfigError("budget must be >= 1");
  if (games_per_search < 1) throw ConfigError("games_per_search must be >= 1");
  if (schedule.empty()) throw ConfigError("schedule must not be empty");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] <= schedule[i - 1]) {
      throw ConfigError("schedule must be strictly increasing");
    }
  }
  if (schedule.back() > budget) throw ConfigError("budget must be >= every schedule point");
  if (limits.depth_cap < 1 || limits.node_cap < 1) {
    throw ConfigError("depth_cap and node_cap must be >= 1");
  }
  if (first_player != 0 && first_player != 1) throw ConfigError("first_player must be 0 or 1");
  if (blotto_pool_size < 1) throw ConfigError("blotto pool size must be >= 1");
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (swap_seats && repetitions % 2 != 0) {
    throw ConfigError("repetitions must be even when swap_seats is set");
  }
}

PpsroConfig ExperimentConfig::ToPpsroConfig(LearnerKind learner) const {
  PpsroConfig c;
  c.learner = learner;
  c.budget = budget;
  c.games_per_search = games_per_search;
  c.search.limits = limits;
  c.first_player = first_player;
  c.final_mode = final_mode;
  return c;
}

namespace {

void RejectUnknownKeys(const json& j, std::initializer_list<const char*> known,
                       const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = key == "description" || key == "$schema";
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

ExperimentConfig ParseExperimentConfig(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RejectUnknownKeys(j,
                    {"game", "learners", "budget", "games_per_search", "seeds", "runs",
                     "seed", "schedule", "output_dir", "depth_cap", "node_cap",
                     "first_player", "final_strategy", "blotto_pool", "tournament"},
                    "config");

  ExperimentConfig c;
  if (!j.contains("game")) throw ConfigError("config needs a 'game' object");
  const json& g = j.at("game");
  if (!g.is_object()) throw ConfigError("'game' must be an object");
  RejectUnknownKeys(g, {"kind", "size", "troops", "rangers_player"}, "'game'");
  c.game.kind = ParseGameKind(Get<std::string>(g, "kind", ""));
  c.game.size = Get<int>(g, "size", c.game.kind == GameKind::kBlotto ? 5 : 10);
  c.game.troops = Get<int>(g, "troops", c.game.kind == GameKind::kBlotto ? 7 : 0);
  c.game.rangers_player = Get<int>(g, "rangers_player", 0);

  if (j.contains("learners")) {
    c.learners.clear();
    for (const auto& name : Get<std::vector<std::string>>(j, "learners", {})) {
      c.learners.push_back(ParseLearnerKind(name));
    }
  }
  c.budget = Get<long long>(j, "budget", c.budget);
  c.games_per_search = Get<long long>(j, "games_per_search", c.games_per_search);
  if (j.contains("seeds")) {
    c.seeds = Get<std::vector<std::uint64_t>>(j, "seeds", {});
    if (j.contains("runs") && Get<int>(j, "runs", 0) != c.runs()) {
      throw ConfigError("'runs' disagrees with the length of 'seeds'");
    }
  } else {
    const int runs = Get<int>(j, "runs", 50);
    if (runs < 1) throw ConfigError("runs must be >= 1");
    const auto base = Get<std::uint64_t>(j, "seed", 1);
    for (int r = 0; r < runs; ++r) c.seeds.push_back(base + static_cast<std::uint64_t>(r));
  }
  c.schedule = j.contains("schedule") ? Get<std::vector<long long>>(j, "schedule", {})
                                      : DefaultSchedule(c.budget);
  c.output_dir = Get<std::string>(j, "output_dir", c.output_dir);
  c.limits.depth_cap = Get<int>(j, "depth_cap", c.limits.depth_cap);
  c.limits.node_cap = Get<int>(j, "node_cap", c.limits.node_cap);
  c.first_player = Get<int>(j, "first_player", 0);
  c.final_mode = ParseFinalMode(Get<std::string>(j, "final_strategy", "last"));
  if (j.contains("blotto_pool")) {
    const json& pool = j.at("blotto_pool");
    RejectUnknownKeys(pool, {"size", "seed"}, "'blotto_pool'");
    c.blotto_pool_size = Get<int>(pool, "size", c.blotto_pool_size);
    c.blotto_pool_seed = Get<std::uint64_t>(pool, "seed", c.blotto_pool_seed);
  }
  if (j.contains("tournament")) {
    const json& t = j.at("tournament");
    RejectUnknownKeys(t, {"repetitions", "swap_seats", "strategies"}, "'tournament'");
    c.repetitions = Get<int>(t, "repetitions", c.repetitions);
    c.swap_seats = Get<bool>(t, "swap_seats", c.swap_seats);
    if (t.contains("strategies")) {
      for (const json& s : t.at("strategies")) {
        RejectUnknownKeys(s, {"name", "programs"}, "a tournament strategy");
        NamedPrograms np;
        np.name = Get<std::string>(s, "name", "");
        const auto programs = Get<std::vector<std::string>>(s, "programs", {});
        if (np.name.empty() || programs.empty() || programs.size() > 2) {
          throw ConfigError("tournament strategies need a name and 1-2 programs");
        }
        np.programs = {programs[0], programs.size() > 1 ? programs[1] : programs[0]};
        c.strategies.push_back(std::move(np));
      }
    }
  }
  c.Validate();
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseExperimentConfig(buffer.str());
}

int MetricPlayer(const GameSpec& spec) {
  return spec.kind == GameKind::kPoachersRangers ? spec.rangers_player : 0;
}

CurveMetric::CurveMetric(const Game& game, const ExperimentConfig& config)
    : game_(&game) {
  if (game.spec().kind == GameKind::kBlotto) {
    Rng rng(config.blotto_pool_seed);
    const int opponent = 1 - MetricPlayer(game.spec());
    for (int i = 0; i < config.blotto_pool_size; ++i) {
      pool_.push_back(game.Decode(
          opponent, SampleProgram(game.grammar(opponent), config.limits, rng)));
    }
  }
}

double CurveMetric::operator()(const Program& program) const {
  const int player = MetricPlayer(game_->spec());
  switch (game_->spec().kind) {
    case GameKind::kPoachersRangers:
      return DefendedGateCount(*game_, player, program);
    case GameKind::kClimbingMonkeys:
      return ClimbHeight(*game_, player, program);
    case GameKind::kBlotto: {
      const DecodedStrategy self = game_->Decode(player, program);
      int wins = 0, draws = 0;
      for (const auto& opp : pool_) {
        const int u = game_->UtilityFor(player, self, opp);
        wins += u > 0 ? 1 : 0;
        draws += u == 0 ? 1 : 0;
      }
      return (wins + 0.5 * draws) / static_cast<double>(pool_.size());
    }
  }
  return 0.0;
}

int WorkerThreads() {
  if (const char* env = std::getenv("METASTRAT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

LearningCurves RunLearningCurves(const ExperimentConfig& config) {
  config.Validate();
  struct Job {
    LearnerKind learner;
    std::uint64_t seed;
    std::vector<CurveRow> rows;
  };
  std::vector<Job> jobs;
  for (LearnerKind learner : config.learners) {
    for (std::uint64_t seed : config.seeds) jobs.push_back({learner, seed, {}});
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    const Game game(config.game);
    const CurveMetric metric(game, config);
    const int player = MetricPlayer(config.game);
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      Job& job = jobs[i];
      PpsroConfig run_config = config.ToPpsroConfig(job.learner);
      const PpsroResult result = PpsroRun(game, run_config, job.seed);

      // Snapshot: the latest strategy of `player` added within each point.
      // The last fill-in may overshoot the budget; the budget point reports
      // the run's final strategy.
      for (long long point : config.schedule) {
        int index = 0;
        for (const CurveSample& s : result.samples) {
          if (s.player == player && (s.games_played <= point || point >= config.budget)) {
            index = s.strategy_index;
          }
        }
        const Program& program = result.state.table.strategy(player, index);
        job.rows.push_back({LearnerName(job.learner), job.seed, point,
                            metric(program), Render(program)});
      }
    }
  };
  const int threads = std::min<int>(WorkerThreads(), static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  LearningCurves curves;
  for (Job& job : jobs) {
    curves.rows.insert(curves.rows.end(), job.rows.begin(), job.rows.end());
  }
  for (LearnerKind learner : config.learners) {
    for (long long point : config.schedule) {
      const auto values = curves.Values(LearnerName(learner), point);
      curves.summary.push_back(
          {LearnerName(learner), point, Mean(values), StdDev(values)});
    }
  }
  return curves;
}

std::vector<double> LearningCurves::Values(const std::string& learner,
                                           long long games_played) const {
  std::vector<double> out;
  for (const CurveRow& r : rows) {
    if (r.learner == learner && r.games_played == games_played) out.push_back(r.metric);
  }
  return out;
}

std::string LearningCurves::RowsCsv() const {
  std::ostringstream out;
  out << "learner,seed,games_played,metric\n" << std::fixed << std::setprecision(6);
  for (const CurveRow& r : rows) {
    out << r.learner << ',' << r.seed << ',' << r.games_played << ',' << r.metric << '\n';
  }
  return out.str();
}

std::string LearningCurves::SummaryCsv() const {
  std::ostringstream out;
  out << "learner,games_played,mean,std\n" << std::fixed << std::setprecision(6);
  for (const CurveSummary& s : summary) {
    out << s.learner << ',' << s.games_played << ',' << s.mean << ',' << s.stddev << '\n';
  }
  return out.str();
}

std::string LearningCurves::ProgramsCsv() const {
  std::ostringstream out;
  out << "learner,seed,games_played,program\n";
  for (const CurveRow& r : rows) {
    out << r.learner << ',' << r.seed << ',' << r.games_played << ','
        << CsvQuoted(r.program) << '\n';
  }
  return out.str();
}

std::string LearningCurves::Svg(const std::string& title,
                                const std::string& metric_label) const {
  std::vector<ChartSeries> series;
  for (const CurveSummary& s : summary) {
    if (series.empty() || series.back().name != s.learner) {
      series.push_back({s.learner, {}, {}, {}});
    }
    series.back().x.push_back(static_cast<double>(s.games_played));
    series.back().y.push_back(s.mean);
    series.back().error.push_back(s.stddev);
  }
  ChartOptions options;
  options.title = title;
  options.x_label = "games played";
  options.y_label = metric_label;
  options.log_x = true;
  return RenderLineChart(series, options);
}

}  // namespace metastrat
