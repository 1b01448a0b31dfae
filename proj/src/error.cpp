// SPDX-FileCopyrightText: (c) 2026 The cohomolib authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cohomolib/error.hpp>
#include <cohomolib/parallel.hpp>

#include <cstdlib>
#include <string>

namespace cohomo {

const char* error_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::RationalInput: return "RationalInput";
    case ErrorCode::InvalidQuotient: return "InvalidQuotient";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonpositiveDerivative: return "NonpositiveDerivative";
    case ErrorCode::NotADiffeomorphism: return "NotADiffeomorphism";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::PeriodicOrbitDetected: return "PeriodicOrbitDetected";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::TargetInPlateau: return "TargetInPlateau";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::RationalRotation: return "RationalRotation";
    case ErrorCode::PartitionViolation: return "PartitionViolation";
    case ErrorCode::DerivativeUnavailable: return "DerivativeUnavailable";
    case ErrorCode::OrderUnavailable: return "OrderUnavailable";
    case ErrorCode::BoundViolated: return "BoundViolated";
    case ErrorCode::DegenerateBetas: return "DegenerateBetas";
    case ErrorCode::DivisorUnderflow: return "DivisorUnderflow";
    case ErrorCode::NotLiouvilleEnough: return "NotLiouvilleEnough";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::NonPeriodicConjugator: return "NonPeriodicConjugator";
    case ErrorCode::FixedPointInWindow: return "FixedPointInWindow";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::PeriodicityViolated: return "PeriodicityViolated";
    case ErrorCode::NoQualifyingLevel: return "NoQualifyingLevel";
    case ErrorCode::CertificateFailed: return "CertificateFailed";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

unsigned thread_count() noexcept
{
    static const unsigned n = [] {
        unsigned hw = std::thread::hardware_concurrency();
        if (hw == 0) hw = 1;
        if (const char* env = std::getenv("COHOMOLIB_THREADS")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && v >= 1) return static_cast<unsigned>(v < static_cast<long>(hw) ? v : hw);
        }
        return hw;
    }();
    return n;
}

} // namespace cohomo
