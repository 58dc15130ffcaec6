#pragma once

#include <stdexcept>
#include <string>

namespace liouville {

// Library error with a stable machine-readable kind tag. The CLI maps kinds
// onto exit codes; tests match on kind() rather than the message text.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

inline Error domain_error(const std::string& w) { return Error("DomainError", w); }
inline Error constraint_violation(const std::string& w) { return Error("ConstraintViolation", w); }
inline Error degenerate_input(const std::string& w) { return Error("DegenerateInput", w); }
inline Error critical_point(const std::string& w) { return Error("CriticalPoint", w); }
inline Error pole_evaluation(const std::string& w) { return Error("PoleEvaluation", w); }
inline Error step_too_large(const std::string& w) { return Error("StepTooLarge", w); }
inline Error pole_proximity(const std::string& w) { return Error("PoleProximity", w); }
inline Error step_underflow(const std::string& w) { return Error("StepUnderflow", w); }
inline Error symmetry_violation(const std::string& w) { return Error("SymmetryViolation", w); }
inline Error range_violation(const std::string& w) { return Error("RangeViolation", w); }
inline Error normalization_failure(const std::string& w) { return Error("NormalizationFailure", w); }
inline Error degenerate_fit(const std::string& w) { return Error("DegenerateFit", w); }
inline Error fit_failure(const std::string& w) { return Error("FitFailure", w); }
inline Error vertex_limit_nonconvergent(const std::string& w) { return Error("VertexLimitNonconvergent", w); }
inline Error margin_violation(const std::string& w) { return Error("MarginViolation", w); }
inline Error grid_too_coarse(const std::string& w) { return Error("GridTooCoarse", w); }
inline Error no_bracket(const std::string& w) { return Error("NoBracket", w); }
inline Error unsupported_variant(const std::string& w) { return Error("UnsupportedVariant", w); }

} // namespace liouville
