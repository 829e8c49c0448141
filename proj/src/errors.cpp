#include "engel/errors.hpp"

namespace engel {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSolvedForm: return "NotSolvedForm";
        case ErrorCode::DegenerateComplement: return "DegenerateComplement";
        case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
        case ErrorCode::NotEngelPoint: return "NotEngelPoint";
        case ErrorCode::WellDefinednessViolated: return "WellDefinednessViolated";
        case ErrorCode::NotOnZeroSet: return "NotOnZeroSet";
        case ErrorCode::NotTransverse: return "NotTransverse";
        case ErrorCode::PathTouchesC: return "PathTouchesC";
        case ErrorCode::WrongLinkCount: return "WrongLinkCount";
        case ErrorCode::CycleMeetsC: return "CycleMeetsC";
        case ErrorCode::NonTransverseIntersection: return "NonTransverseIntersection";
        case ErrorCode::NewtonDiverged: return "NewtonDiverged";
        case ErrorCode::PresentationMismatch: return "PresentationMismatch";
        case ErrorCode::DegreeMismatch: return "DegreeMismatch";
        case ErrorCode::UnknownEntry: return "UnknownEntry";
        case ErrorCode::BadModulus: return "BadModulus";
        case ErrorCode::DegenerateMetric: return "DegenerateMetric";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::SemanticError: return "SemanticError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

} // namespace engel
