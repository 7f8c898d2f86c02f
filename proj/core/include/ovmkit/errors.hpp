// Copyright 2026 The ovmkit Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace ovmkit {

/// Base class for all ovmkit failures.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NotHermitianError : public Error {
  public:
    using Error::Error;
};

class ConvergenceError : public Error {
  public:
    using Error::Error;
};

class NotPsdError : public Error {
  public:
    using Error::Error;
};

class SingularOperatorError : public Error {
  public:
    using Error::Error;
};

class InsufficientMomentsError : public Error {
  public:
    using Error::Error;
};

class NotUnitVectorError : public Error {
  public:
    using Error::Error;
};

class NonRealQuadraticFormError : public Error {
  public:
    using Error::Error;
};

class OverflowRiskError : public Error {
  public:
    using Error::Error;
};

class NoRecurrenceError : public Error {
  public:
    using Error::Error;
};

class NonRealRootsError : public Error {
  public:
    using Error::Error;
};

class NonSimpleRootsError : public Error {
  public:
    using Error::Error;
};

class ReconstructionMismatchError : public Error {
  public:
    using Error::Error;
};

class NotMeasureError : public Error {
  public:
    using Error::Error;
};

class NotSemiSpectralError : public Error {
  public:
    using Error::Error;
};

class RangeConditionError : public Error {
  public:
    using Error::Error;
};

class NotFlatError : public Error {
  public:
    using Error::Error;
};

class NotRepresentingError : public Error {
  public:
    using Error::Error;
};

class SingularProductError : public Error {
  public:
    using Error::Error;
};

class DegenerateBlockError : public Error {
  public:
    using Error::Error;
};

class SchemaError : public Error {
  public:
    using Error::Error;
};

} // namespace ovmkit
