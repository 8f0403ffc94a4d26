#include "stieltjes/errors.hpp"

namespace stieltjes {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonAdmissibleEndpoint: return "NonAdmissibleEndpoint";
        case ErrorKind::MalformedSpec: return "MalformedSpec";
        case ErrorKind::OutOfDomain: return "OutOfDomain";
        case ErrorKind::UnboundedIntegrand: return "UnboundedIntegrand";
        case ErrorKind::DegenerateQuotient: return "DegenerateQuotient";
        case ErrorKind::NotDifferentiableAlmostEverywhere: return "NotDifferentiableAlmostEverywhere";
        case ErrorKind::PhiHypothesisViolated: return "PhiHypothesisViolated";
        case ErrorKind::NondecreasingRequired: return "NondecreasingRequired";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::DuplicateAbscissa: return "DuplicateAbscissa";
        case ErrorKind::BoundaryHypothesisViolated: return "BoundaryHypothesisViolated";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::PhiNotZero: return "PhiNotZero";
        case ErrorKind::SequenceUnsuitable: return "SequenceUnsuitable";
    }
    return "Unknown";
}

}  // namespace stieltjes
