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

#ifndef METASTRAT_EXPERIMENT_H_
#define METASTRAT_EXPERIMENT_H_

// Learning-curve experiments: many independent synthesis runs per learner,
// with the current strategy's performance sampled at fixed game counts.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "metastrat/games.h"
#include "metastrat/grammar.h"
#include "metastrat/learners.h"

namespace metastrat {

struct NamedPrograms {
  std::string name;
  // Program text per seat, parsed with the game's grammar for that seat.
  std::array<std::string, 2> programs;
};

struct ExperimentConfig {
  GameSpec game;
  std::vector<LearnerKind> learners{LearnerKind::kIBR, LearnerKind::kFP,
                                    LearnerKind::kDO, LearnerKind::kTwoL};
  long long budget = 100000;
  long long games_per_search = 10000;
  std::vector<std::uint64_t> seeds;
  // Game counts at which the metric is sampled; strictly increasing.
  std::vector<long long> schedule;
  std::string output_dir = "out";
  GenerationLimits limits;
  int first_player = 0;
  FinalMode final_mode = FinalMode::kLast;
  // Blotto metric: winning rate against this many fixed random programs.
  int blotto_pool_size = 20;
  std::uint64_t blotto_pool_seed = 20240101;
  // Tournament settings.
  int repetitions = 10;
  bool swap_seats = true;
  std::vector<NamedPrograms> strategies;

  int runs() const { return static_cast<int>(seeds.size()); }
  // Throws ConfigError.
  void Validate() const;
  PpsroConfig ToPpsroConfig(LearnerKind learner) const;
};

// Parses the JSON config format documented in docs/config_schema.json.
// Throws ConfigError.
ExperimentConfig ParseExperimentConfig(const std::string& json_text);
ExperimentConfig LoadExperimentConfig(const std::string& path);

// 1, 2, 5, 10, 20, 50, ... up to and including `budget`.
std::vector<long long> DefaultSchedule(long long budget);

// The seat whose strategy the curve metric scores: the rangers in P&R,
// player 0 otherwise.
int MetricPlayer(const GameSpec& spec);

// Performance of a strategy for MetricPlayer(): distinct gates defended,
// branch reached, or Blotto winning rate against the fixed reference pool.
class CurveMetric {
 public:
  CurveMetric(const Game& game, const ExperimentConfig& config);
  double operator()(const Program& program) const;

 private:
  const Game* game_;
  std::vector<DecodedStrategy> pool_;
};

struct CurveRow {
  std::string learner;
  std::uint64_t seed = 0;
  long long games_played = 0;
  double metric = 0.0;
  // Rendered strategy the metric was computed from.
  std::string program;
};

struct CurveSummary {
  std::string learner;
  long long games_played = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

struct LearningCurves {
  std::vector<CurveRow> rows;
  std::vector<CurveSummary> summary;

  // learner,seed,games_played,metric
  std::string RowsCsv() const;
  // learner,games_played,mean,std
  std::string SummaryCsv() const;
  // learner,seed,games_played,program
  std::string ProgramsCsv() const;
  std::string Svg(const std::string& title, const std::string& metric_label) const;
  // Metric values of one learner at one schedule point, in seed order.
  std::vector<double> Values(const std::string& learner, long long games_played) const;
};

// Worker count from METASTRAT_THREADS, else the hardware concurrency.
int WorkerThreads();

LearningCurves RunLearningCurves(const ExperimentConfig& config);

}  // namespace metastrat

#endif  // METASTRAT_EXPERIMENT_H_
