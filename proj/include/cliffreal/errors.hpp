#pragma once

#include <stdexcept>
#include <string>

namespace cliffreal {

// Every precondition failure in the library throws CliffordError with a stable
// machine-readable code. Messages are for humans; codes are for tests and the CLI.
enum class ErrorCode {
    EvenCharacteristic,
    NotPrime,
    ZeroInput,
    ZeroParameter,
    DivisionByZero,
    FieldMismatch,
    ParseError,
    DimensionMismatch,
    NotSymmetric,
    Degenerate,
    DegenerateSubspace,
    IsotropicSearchFailed,
    ContextMismatch,
    NotInvertible,
    NotAVector,
    NormNotScalar,
    NotInGamma,
    NotInGammaPlus,
    NotInSpin,
    NotOrthogonal,
    NotSpecialOrthogonal,
    NotLiftable,
    PreconditionViolated,
    EigenvaluesNotRational,
    NotSemisimple,
    NoRationalEigenvalue,
    NotStronglyRegular,
    CentralizerTooLarge,
    WrongRelation,
    ConjugatorNotFound,
    NotRealOrUndecided,
    OrderCapExceeded,
    CapExceeded,
    ConfigInvalid,
    Internal,
};

const char* error_code_name(ErrorCode code);

class CliffordError : public std::runtime_error {
public:
    CliffordError(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw CliffordError(code, message);
}

}  // namespace cliffreal
