// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace cohomo {

enum class ErrorCode {
    InvalidArgument = 1,
    PrecisionExhausted,
    RationalInput,
    InvalidQuotient,
    IndexOutOfRange,
    LengthMismatch,
    NonpositiveDerivative,
    NotADiffeomorphism,
    NewtonDivergence,
    PeriodicOrbitDetected,
    MaxIterExceeded,
    TargetInPlateau,
    BudgetExceeded,
    RationalRotation,
    PartitionViolation,
    DerivativeUnavailable,
    OrderUnavailable,
    BoundViolated,
    DegenerateBetas,
    DivisorUnderflow,
    NotLiouvilleEnough,
    NotCommuting,
    NotUnimodular,
    NonPeriodicConjugator,
    FixedPointInWindow,
    DegenerateInterval,
    PeriodicityViolated,
    NoQualifyingLevel,
    CertificateFailed,
    ResidualTooLarge,
    ConfigParse,
    Internal,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace cohomo
