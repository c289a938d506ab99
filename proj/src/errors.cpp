#include "cliffreal/errors.hpp"

namespace cliffreal {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::ZeroInput: return "ZeroInput";
        case ErrorCode::ZeroParameter: return "ZeroParameter";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::DegenerateSubspace: return "DegenerateSubspace";
        case ErrorCode::IsotropicSearchFailed: return "IsotropicSearchFailed";
        case ErrorCode::ContextMismatch: return "ContextMismatch";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::NotAVector: return "NotAVector";
        case ErrorCode::NormNotScalar: return "NormNotScalar";
        case ErrorCode::NotInGamma: return "NotInGamma";
        case ErrorCode::NotInGammaPlus: return "NotInGammaPlus";
        case ErrorCode::NotInSpin: return "NotInSpin";
        case ErrorCode::NotOrthogonal: return "NotOrthogonal";
        case ErrorCode::NotSpecialOrthogonal: return "NotSpecialOrthogonal";
        case ErrorCode::NotLiftable: return "NotLiftable";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::EigenvaluesNotRational: return "EigenvaluesNotRational";
        case ErrorCode::NotSemisimple: return "NotSemisimple";
        case ErrorCode::NoRationalEigenvalue: return "NoRationalEigenvalue";
        case ErrorCode::NotStronglyRegular: return "NotStronglyRegular";
        case ErrorCode::CentralizerTooLarge: return "CentralizerTooLarge";
        case ErrorCode::WrongRelation: return "WrongRelation";
        case ErrorCode::ConjugatorNotFound: return "ConjugatorNotFound";
        case ErrorCode::NotRealOrUndecided: return "NotRealOrUndecided";
        case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace cliffreal
