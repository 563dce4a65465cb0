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

#ifndef METASTRAT_ERROR_H_
#define METASTRAT_ERROR_H_

#include <stdexcept>
#include <string>

namespace metastrat {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GrammarParseError : public Error {
 public:
  GrammarParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class UndefinedSymbolError : public Error {
 public:
  using Error::Error;
};

class NoProductionError : public Error {
 public:
  using Error::Error;
};

class InfeasibleDepthError : public Error {
 public:
  using Error::Error;
};

class SizeCapError : public Error {
 public:
  using Error::Error;
};

class ProgramParseError : public Error {
 public:
  using Error::Error;
};

class InterpretationError : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace metastrat

#endif  // METASTRAT_ERROR_H_
