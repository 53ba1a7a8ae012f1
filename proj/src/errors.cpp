// Copyright 2026 The WitnessForge Authors
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

#include "wforge/errors.hpp"

namespace wforge {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NoConvergence:
            return "NoConvergence";
        case ErrorCode::BadPartyIndex:
            return "BadPartyIndex";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::InvalidState:
            return "InvalidState";
        case ErrorCode::NotNormalized:
            return "NotNormalized";
        case ErrorCode::ParamOutOfRange:
            return "ParamOutOfRange";
        case ErrorCode::SelectionOutOfRange:
            return "SelectionOutOfRange";
        case ErrorCode::COutOfInterval:
            return "COutOfInterval";
        case ErrorCode::NotOrthonormal:
            return "NotOrthonormal";
        case ErrorCode::MaxEigenvalueNotSelected:
            return "MaxEigenvalueNotSelected";
        case ErrorCode::CPrimeOutOfInterval:
            return "CPrimeOutOfInterval";
        case ErrorCode::ZeroMaxEigenvalue:
            return "ZeroMaxEigenvalue";
        case ErrorCode::FormNotSupported:
            return "FormNotSupported";
        case ErrorCode::UnnormalizedTail:
            return "UnnormalizedTail";
        case ErrorCode::CountTooLarge:
            return "CountTooLarge";
        case ErrorCode::UnsupportedDims:
            return "UnsupportedDims";
        case ErrorCode::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

}  // namespace wforge
