// Copyright 2026 The qsens Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types thrown across the library.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qsens {

/// Base class for every error raised by qsens.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define QSENS_DEFINE_ERROR(Name)                                               \
    class Name : public Error {                                                \
      public:                                                                  \
        explicit Name(const std::string &what)                                 \
            : Error(std::string(#Name ": ") + what) {}                         \
    }

QSENS_DEFINE_ERROR(InvalidArgument);
QSENS_DEFINE_ERROR(NotHermitian);
QSENS_DEFINE_ERROR(NotUnitary);
QSENS_DEFINE_ERROR(NotNormalized);
QSENS_DEFINE_ERROR(DimensionMismatch);
QSENS_DEFINE_ERROR(DimensionTooLarge);
QSENS_DEFINE_ERROR(ConvergenceFailure);
QSENS_DEFINE_ERROR(ParamLengthMismatch);
QSENS_DEFINE_ERROR(IndexOutOfRange);
QSENS_DEFINE_ERROR(TooFewFeatures);
QSENS_DEFINE_ERROR(SingleClass);
QSENS_DEFINE_ERROR(EmptyDataset);
QSENS_DEFINE_ERROR(IoError);

#undef QSENS_DEFINE_ERROR

} // namespace qsens
