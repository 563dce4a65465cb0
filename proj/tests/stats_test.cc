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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "metastrat/error.h"
#include "metastrat/stats.h"

namespace metastrat {
namespace {

struct WelchReference {
  std::vector<double> a;
  std::vector<double> b;
  double t;
  double df;
  double p;
};

const std::vector<WelchReference>& References() {
  static const std::vector<WelchReference> refs = {
#include "oracles/welch_reference.inc"
  };
  return refs;
}

TEST_SUITE("stats") {

TEST_CASE("mean and sample standard deviation") {
  const std::vector<double> xs = {2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(Mean(xs) == doctest::Approx(5.0));
  CHECK(StdDev(xs) == doctest::Approx(std::sqrt(32.0 / 7.0)));
  CHECK(StdDev(std::vector<double>{3.0}) == 0.0);
  CHECK_THROWS_AS(Mean(std::vector<double>{}), Error);
}

TEST_CASE("welch test matches frozen scipy values") {
  REQUIRE(References().size() == 50);
  for (const WelchReference& r : References()) {
    const WelchResult w = WelchT(r.a, r.b);
    CHECK(std::abs(w.t - r.t) <= 1e-6 * std::max(1.0, std::abs(r.t)));
    CHECK(std::abs(w.df - r.df) <= 1e-6 * std::max(1.0, r.df));
    CHECK(std::abs(w.p_value - r.p) <= 1e-6);
  }
}

TEST_CASE("welch edge cases") {
  CHECK_THROWS_AS(WelchT(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}), Error);
  CHECK_THROWS_AS(WelchT(std::vector<double>{1.0, 1.0}, std::vector<double>{2.0, 2.0}),
                  Error);
  // One constant sample is fine as long as the other varies.
  const WelchResult w =
      WelchT(std::vector<double>{10, 10, 10}, std::vector<double>{9, 10, 8, 9});
  CHECK(w.t > 0.0);
  CHECK(w.p_value > 0.0);
  CHECK(w.p_value < 1.0);
  const WelchResult same =
      WelchT(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3});
  CHECK(same.t == 0.0);
  CHECK(same.p_value == doctest::Approx(1.0));
}

}  // TEST_SUITE

}  // namespace
}  // namespace metastrat
