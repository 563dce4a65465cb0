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

// Direct string-level interpreters for the three games. They work on the
// rendered instruction list and share no code with the library.

#ifndef METASTRAT_TESTS_ORACLES_INTERPRETERS_H_
#define METASTRAT_TESTS_ORACLES_INTERPRETERS_H_

#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

struct Instruction {
  std::string op;
  int arg;
};

inline std::vector<Instruction> Instructions(const std::string& text) {
  std::vector<Instruction> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    const auto open = tok.find('[');
    out.push_back({tok.substr(0, open), std::stoi(tok.substr(open + 1))});
  }
  return out;
}

// Utility for the rangers.
inline int PoachersRangers(const std::string& rangers, const std::string& poachers) {
  std::set<int> defended;
  for (const auto& i : Instructions(rangers)) defended.insert(i.arg);
  for (const auto& i : Instructions(poachers)) {
    if (!defended.count(i.arg)) return -1;
  }
  return 1;
}

inline int Climb(const std::string& program) {
  int h = 0;
  for (const auto& i : Instructions(program)) {
    if (i.arg == h + 1) h = i.arg;
  }
  return h;
}

// Utility for the first monkey.
inline int ClimbingMonkeys(const std::string& a, const std::string& b) {
  const int ha = Climb(a), hb = Climb(b);
  return ha > hb ? 1 : (ha < hb ? -1 : 0);
}

inline std::vector<int> Allocate(const std::string& program, int fields, int troops) {
  std::vector<int> alloc(fields + 1, 0);
  int used = 0;
  for (const auto& i : Instructions(program)) {
    if (used == troops) break;
    ++alloc[i.arg];
    ++used;
  }
  return alloc;
}

// Utility for the first colonel.
inline int Blotto(const std::string& a, const std::string& b, int fields, int troops) {
  const auto x = Allocate(a, fields, troops), y = Allocate(b, fields, troops);
  int wa = 0, wb = 0;
  for (int f = 1; f <= fields; ++f) {
    wa += x[f] > y[f];
    wb += y[f] > x[f];
  }
  return wa > wb ? 1 : (wa < wb ? -1 : 0);
}

}  // namespace oracle

#endif  // METASTRAT_TESTS_ORACLES_INTERPRETERS_H_
