// Copyright 2026 The SliceMend Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef SLICEMEND_ERRORS_HPP_
#define SLICEMEND_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace slicemend {

// Contract violations and bad inputs are exceptions. Execution outcomes
// (faults, budget overruns, unparsable candidates) are values.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class UnknownLineError : public Error {
 public:
  explicit UnknownLineError(int line)
      : Error("unknown line " + std::to_string(line)), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class InvalidCriterionError : public Error {
 public:
  using Error::Error;
};

class NoFailingTestsError : public Error {
 public:
  NoFailingTestsError() : Error("suite has no failing test on the program") {}
};

class InvalidCountsError : public Error {
 public:
  using Error::Error;
};

class MismatchedSliceError : public Error {
 public:
  using Error::Error;
};

class InapplicableTemplateError : public Error {
 public:
  using Error::Error;
};

class InapplicablePatchError : public Error {
 public:
  using Error::Error;
};

class UnseedableError : public Error {
 public:
  using Error::Error;
};

}  // namespace slicemend

#endif  // SLICEMEND_ERRORS_HPP_
