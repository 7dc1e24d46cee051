#pragma once

#include <stdexcept>
#include <string>

namespace sturmjsr {

enum class errc {
    invalid_argument,
    parse_error,
    non_positive_matrix,
    non_positive_scale,
    empty_word,
    domain_error,
    inconsistent_equivalences,
    not_in_class_c,
    not_in_class_d,
    no_convergence,
    singular_transform,
    prefix_too_short,
    closed_form_mismatch,
    out_of_interior_range,
    plateau_not_found,
    incompatible_radicands,
};

inline const char* errc_name(errc code) {
    switch (code) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::parse_error: return "ParseError";
    case errc::non_positive_matrix: return "NonPositiveMatrix";
    case errc::non_positive_scale: return "NonPositiveScale";
    case errc::empty_word: return "EmptyWord";
    case errc::domain_error: return "DomainError";
    case errc::inconsistent_equivalences: return "InconsistentEquivalences";
    case errc::not_in_class_c: return "NotInClassC";
    case errc::not_in_class_d: return "NotInClassD";
    case errc::no_convergence: return "NoConvergence";
    case errc::singular_transform: return "SingularTransform";
    case errc::prefix_too_short: return "PrefixTooShort";
    case errc::closed_form_mismatch: return "ClosedFormMismatch";
    case errc::out_of_interior_range: return "OutOfInteriorRange";
    case errc::plateau_not_found: return "PlateauNotFound";
    case errc::incompatible_radicands: return "IncompatibleRadicands";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace sturmjsr
