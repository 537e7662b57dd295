// Copyright 2026 The qslide Authors
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

#ifndef QSLIDE_ERRORS_HPP_
#define QSLIDE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qslide {

/// Invalid user-supplied configuration: bad sizes, mismatched widgets,
/// schedules that cannot be built. Maps to CLI exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its tolerance, or a validation
/// check against an independent route failed. Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  explicit NumericalError(const std::string& what) : NumericalError(what, 0.0) {}

  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// The scattering linear system is singular at this energy (a bound state
/// of the widget sits exactly at E(k)).
class ResonanceError : public NumericalError {
 public:
  ResonanceError(const std::string& what, double energy)
      : NumericalError(what), energy_(energy) {}

  double energy() const { return energy_; }

 private:
  double energy_;
};

/// A loaded widget does not reproduce its declared scattering behavior.
class WidgetMismatchError : public ConfigError {
 public:
  WidgetMismatchError(const std::string& what, double max_deviation)
      : ConfigError(what), max_deviation_(max_deviation) {}

  double max_deviation() const { return max_deviation_; }

 private:
  double max_deviation_;
};

}  // namespace qslide

#endif  // QSLIDE_ERRORS_HPP_
