#include "gaitcf/errors.hpp"

namespace gaitcf {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Format: return "format error";
        case ErrorKind::Ordering: return "ordering error";
        case ErrorKind::Value: return "value error";
        case ErrorKind::Enumeration: return "enumeration error";
        case ErrorKind::Completeness: return "completeness error";
        case ErrorKind::Io: return "i/o error";
        case ErrorKind::Spec: return "spec error";
        case ErrorKind::Length: return "length error";
        case ErrorKind::DegenerateInput: return "degenerate-input error";
        case ErrorKind::InsufficientSteps: return "insufficient-steps error";
        case ErrorKind::DegenerateDesign: return "degenerate-design error";
        case ErrorKind::Underdetermined: return "underdetermined error";
        case ErrorKind::UndefinedAverage: return "undefined-average error";
        case ErrorKind::DegenerateDuration: return "degenerate-duration error";
        case ErrorKind::ShortCycle: return "short-cycle error";
        case ErrorKind::EmptyInput: return "empty-input error";
        case ErrorKind::DegenerateDenominator: return "degenerate-denominator error";
        case ErrorKind::UndefinedCorrelation: return "undefined-correlation error";
        case ErrorKind::Undefined: return "undefined error";
        case ErrorKind::Config: return "config error";
    }
    return "error";
}

} // namespace gaitcf
