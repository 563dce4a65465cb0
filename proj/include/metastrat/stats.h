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

#ifndef METASTRAT_STATS_H_
#define METASTRAT_STATS_H_

#include <span>

namespace metastrat {

double Mean(std::span<const double> xs);
// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double StdDev(std::span<const double> xs);

struct WelchResult {
  double t = 0.0;
  // Welch-Satterthwaite degrees of freedom.
  double df = 0.0;
  // Two-sided.
  double p_value = 1.0;
};

// Unequal-variance t-test of mean(a) - mean(b). Throws Error when either
// sample has fewer than 2 values or both have zero variance.
WelchResult WelchT(std::span<const double> a, std::span<const double> b);

}  // namespace metastrat

#endif  // METASTRAT_STATS_H_
