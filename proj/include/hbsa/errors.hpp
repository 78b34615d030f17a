// Copyright 2026 The HBSA Authors
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

#ifndef HBSA_ERRORS_HPP
#define HBSA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hbsa {

/// Numeric codes shared with the C API (see hbsa.h). Values are part of the
/// ABI and must not be renumbered.
enum class ErrorCode : int {
    Ok = 0,
    InvalidArgument = 1,
    ZeroState = 2,
    NonUnitary = 3,
    Wiring = 4,
    CounterOverflow = 5,
    UnexpectedCounter = 6,
    IndefiniteSlot = 7,
    InconsistentBranch = 8,
    AmbiguousMapping = 9,
    TableMismatch = 10,
    AmbiguousResidual = 11,
    Parse = 12,
    BufferTooSmall = 13,
    Internal = 14,
};

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

#define HBSA_DEFINE_ERROR(Name, Code) \
    class Name : public Error {       \
       public:                        \
        explicit Name(const std::string &what) : Error(ErrorCode::Code, what) {} \
    }

HBSA_DEFINE_ERROR(InvalidArgumentError, InvalidArgument);
HBSA_DEFINE_ERROR(ZeroStateError, ZeroState);
HBSA_DEFINE_ERROR(NonUnitaryError, NonUnitary);
HBSA_DEFINE_ERROR(WiringError, Wiring);
HBSA_DEFINE_ERROR(CounterOverflowError, CounterOverflow);
HBSA_DEFINE_ERROR(UnexpectedCounterError, UnexpectedCounter);
HBSA_DEFINE_ERROR(IndefiniteSlotError, IndefiniteSlot);
HBSA_DEFINE_ERROR(InconsistentBranchError, InconsistentBranch);
HBSA_DEFINE_ERROR(AmbiguousMappingError, AmbiguousMapping);
HBSA_DEFINE_ERROR(TableMismatchError, TableMismatch);
HBSA_DEFINE_ERROR(AmbiguousResidualError, AmbiguousResidual);
HBSA_DEFINE_ERROR(ParseError, Parse);

#undef HBSA_DEFINE_ERROR

}  // namespace hbsa

#endif  // HBSA_ERRORS_HPP
