#pragma once

#include <stdexcept>
#include <string>

namespace towns {

enum class Errc {
    NotPrime,
    CapExceeded,
    NotSubspace,
    DegenerateAmbient,
    DimensionMismatch,
    DuplicateVectors,
    HypothesisFailed,
    NotInSubspace,
    EmptyIndexSet,
    IndexOutOfRange,
    BudgetExceeded,
    PreconditionViolated,
    NotPowerOfTwo,
    DivisibilityViolated,
    UnsupportedOrder,
    CoreNotEventown,
    NotKWise,
    LengthMismatch,
    NotOneDefect,
    NoDefectPairs,
    DuplicateSets,
    ParseError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::NotSubspace: return "NotSubspace";
        case Errc::DegenerateAmbient: return "DegenerateAmbient";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::DuplicateVectors: return "DuplicateVectors";
        case Errc::HypothesisFailed: return "HypothesisFailed";
        case Errc::NotInSubspace: return "NotInSubspace";
        case Errc::EmptyIndexSet: return "EmptyIndexSet";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::NotPowerOfTwo: return "NotPowerOfTwo";
        case Errc::DivisibilityViolated: return "DivisibilityViolated";
        case Errc::UnsupportedOrder: return "UnsupportedOrder";
        case Errc::CoreNotEventown: return "CoreNotEventown";
        case Errc::NotKWise: return "NotKWise";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::NotOneDefect: return "NotOneDefect";
        case Errc::NoDefectPairs: return "NoDefectPairs";
        case Errc::DuplicateSets: return "DuplicateSets";
        case Errc::ParseError: return "ParseError";
    }
    return "UnknownError";
}

/// Library-wide exception. `what()` starts with the error name so the CLI can
/// forward it verbatim to stderr.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const noexcept { return code_; }
    const char* name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) {
    throw Error(code, detail);
}

inline void require(bool cond, Errc code, const std::string& detail) {
    if (!cond) fail(code, detail);
}

} // namespace towns
