#pragma once

#include <stdexcept>
#include <string>

namespace nkpolicy {

/// Base class for all toolkit errors. `code()` is a stable, machine-parsable
/// identifier used by the CLI diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Malformed matrix system (non-square, non-finite, dimension mismatch).
class InvalidSystem : public Error {
public:
    explicit InvalidSystem(const std::string& message) : Error("invalid-system", message) {}
};

/// Structural or rule parameters outside their admissible ranges, or
/// mode/input mismatches.
class InvalidParams : public Error {
public:
    explicit InvalidParams(const std::string& message) : Error("invalid-params", message) {}
};

/// Forward-looking instrument with a nonzero shock feedback coefficient.
class IdentificationError : public Error {
public:
    explicit IdentificationError(const std::string& message)
        : Error("identification-error", message) {}
};

/// Rule inversion for initial inflation requires f_pi != 0.
class NonInvertibleRule : public Error {
public:
    explicit NonInvertibleRule(const std::string& message)
        : Error("non-invertible-rule", message) {}
};

/// Stable-projection solution requested where the inflation root is not
/// outside the unit circle.
class NotDeterminateUnderConvention : public Error {
public:
    explicit NotDeterminateUnderConvention(const std::string& message)
        : Error("not-determinate-under-convention", message) {}
};

/// The inflation root coincides with the shock root; the eigenvector
/// projection has no solution.
class SingularProjection : public Error {
public:
    explicit SingularProjection(const std::string& message)
        : Error("singular-projection", message) {}
};

/// Cross-checked formulas disagree beyond tolerance: an implementation bug,
/// never a user error.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& message) : Error("internal-error", message) {}
};

} // namespace nkpolicy
