#ifndef SCF_ERRORS_HPP
#define SCF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scf {

// Certified enclosures could not be produced at the current working
// precision. Callers are expected to double the precision and retry,
// up to the ladder cap.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what)
        : std::runtime_error("precision exhausted: " + what) {}
};

struct NotAUnit : std::invalid_argument {
    explicit NotAUnit(const std::string& what)
        : std::invalid_argument("not a unit: " + what) {}
};

// Exact reconstruction disagreed with a numerically recovered result.
// This is a bug signal, never an expected runtime condition.
struct VerificationFailed : std::logic_error {
    explicit VerificationFailed(const std::string& what)
        : std::logic_error("verification failed: " + what) {}
};

struct CertificationFailed : std::runtime_error {
    explicit CertificationFailed(const std::string& what)
        : std::runtime_error("certification failed: " + what) {}
};

struct FixtureMismatch : std::runtime_error {
    explicit FixtureMismatch(const std::string& what)
        : std::runtime_error("fixture mismatch: " + what) {}
};

struct ParameterMismatch : std::invalid_argument {
    explicit ParameterMismatch(const std::string& what)
        : std::invalid_argument("parameter mismatch: " + what) {}
};

}  // namespace scf

#endif  // SCF_ERRORS_HPP
