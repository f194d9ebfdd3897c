#ifndef QSYM_ERRORS_HPP
#define QSYM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qsym {

enum class ErrorCode {
    InvalidRank,
    SpecMismatch,
    BlockViolation,
    NotClosed,
    UnknownLetter,
    OddRank,
    OrientationMismatch,
    NotInvertible,
    NotUnit,
    RankMismatch,
    NotACocycle,
    NotSolvable,
    FreeActionLost,
    NumericalDrift,
    NotRegularSemisimple,
    NotComparable,
    NonPolynomialFlow,
    NotInR,
    BadFiberPoint,
    RegularizationFailed,
    NodesCollide,
    NotConnectedAtRank1,
    ReplayMismatch,
    Parse,
    Io,
};

inline const char* code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::InvalidRank: return "InvalidRank";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::BlockViolation: return "BlockViolation";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::UnknownLetter: return "UnknownLetter";
    case ErrorCode::OddRank: return "OddRank";
    case ErrorCode::OrientationMismatch: return "OrientationMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotACocycle: return "NotACocycle";
    case ErrorCode::NotSolvable: return "NotSolvable";
    case ErrorCode::FreeActionLost: return "FreeActionLost";
    case ErrorCode::NumericalDrift: return "NumericalDrift";
    case ErrorCode::NotRegularSemisimple: return "NotRegularSemisimple";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::NonPolynomialFlow: return "NonPolynomialFlow";
    case ErrorCode::NotInR: return "NotInR";
    case ErrorCode::BadFiberPoint: return "BadFiberPoint";
    case ErrorCode::RegularizationFailed: return "RegularizationFailed";
    case ErrorCode::NodesCollide: return "NodesCollide";
    case ErrorCode::NotConnectedAtRank1: return "NotConnectedAtRank1";
    case ErrorCode::ReplayMismatch: return "ReplayMismatch";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

// Every failure in the library is an Error carrying a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(code_name(code)) + ": " + msg), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

} // namespace qsym

#endif
