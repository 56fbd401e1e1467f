#pragma once

#include <stdexcept>
#include <string>

namespace sogkit {

// Every contract violation carries a stable machine-readable code next to the
// human message; the CLI maps codes onto its exit/certificate scheme.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline Error dimension_mismatch(const std::string& what) { return Error("dimension_mismatch", what); }
inline Error ambient_mismatch(const std::string& what) { return Error("ambient_mismatch", what); }
inline Error not_contained(const std::string& what) { return Error("not_contained", what); }
inline Error not_a_summand(const std::string& what) { return Error("not_a_summand", what); }
inline Error no_preimage(const std::string& what) { return Error("no_preimage", what); }
inline Error element_bound_exceeded(const std::string& what) { return Error("element_bound_exceeded", what); }
inline Error not_distributive(const std::string& what) { return Error("not_distributive", what); }
inline Error family_invalid(const std::string& cond, const std::string& what) {
    return Error("family_invalid(" + cond + ")", what);
}
inline Error precondition_violated(const std::string& what) { return Error("precondition_violated", what); }
inline Error purity_required(const std::string& what) { return Error("purity_required", what); }
inline Error torsion_required(const std::string& what) { return Error("torsion_required", what); }
inline Error not_pure(const std::string& what) { return Error("not_pure", what); }
inline Error budget_exceeded(const std::string& what) { return Error("budget_exceeded", what); }
inline Error invalid_element(const std::string& what) { return Error("invalid_element", what); }
inline Error not_regular(const std::string& what) { return Error("not_regular", what); }
inline Error bad_spec(const std::string& what) { return Error("bad_spec", what); }
inline Error invalid_presentation(const std::string& what) { return Error("invalid_presentation", what); }
inline Error element_not_in_monoid(const std::string& what) { return Error("element_not_in_monoid", what); }
inline Error not_a_lattice(const std::string& what) { return Error("not_a_lattice", what); }
inline Error purity_failure(const std::string& what) { return Error("purity_failure", what); }
inline Error not_a_block(const std::string& what) { return Error("not_a_block", what); }
inline Error stage_not_in_bbar(const std::string& what) { return Error("stage_not_in_bbar", what); }
inline Error map_not_homomorphism(const std::string& what) { return Error("map_not_homomorphism", what); }
inline Error map_not_normalized(const std::string& what) { return Error("map_not_normalized", what); }
inline Error parse_error(const std::string& what) { return Error("parse_error", what); }
inline Error validation_error(const std::string& what) { return Error("validation_error", what); }
inline Error reference_error(const std::string& what) { return Error("reference_error", what); }
inline Error unknown_verb(const std::string& what) { return Error("unknown_verb", what); }
inline Error internal_error(const std::string& what) { return Error("internal_error", what); }

}  // namespace sogkit
