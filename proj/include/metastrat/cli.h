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

#ifndef METASTRAT_CLI_H_
#define METASTRAT_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace metastrat {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFixtureFailure = 2;

// Entry point of `metastrat`; args excludes the program name.
//
//   synth       one synthesis run, prints the final program per player
//   curves      learning curves -> curves.csv, curves_summary.csv, curves.svg
//   tournament  round robin -> tournament.csv and a printed rate table
//   selfcheck   runs the built-in known-answer fixtures
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace metastrat

#endif  // METASTRAT_CLI_H_
