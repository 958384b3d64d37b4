#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rfladder {

/// Base class for all toolkit errors. `code()` is a stable machine-readable
/// identifier; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Malformed or invalid inputs: bad arguments, violated preconditions,
/// unparsable files. Maps to CLI exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// Well-formed inputs for which no result exists (no resonance, no
/// passband). Maps to CLI exit code 3.
class NoResultError : public Error {
public:
    using Error::Error;
};

struct InvalidElement final : InputError {
    explicit InvalidElement(const std::string& m) : InputError("InvalidElement", m) {}
};

struct SingularNetwork final : InputError {
    explicit SingularNetwork(const std::string& m) : InputError("SingularNetwork", m) {}
};

struct InvalidReference final : InputError {
    explicit InvalidReference(const std::string& m) : InputError("InvalidReference", m) {}
};

struct InvalidSpec final : InputError {
    explicit InvalidSpec(const std::string& m) : InputError("InvalidSpec", m) {}
};

struct InvalidFrequency final : InputError {
    explicit InvalidFrequency(const std::string& m) : InputError("InvalidFrequency", m) {}
};

struct InvalidOrdering final : InputError {
    explicit InvalidOrdering(const std::string& m) : InputError("InvalidOrdering", m) {}
};

struct InvalidOrder final : InputError {
    explicit InvalidOrder(const std::string& m) : InputError("InvalidOrder", m) {}
};

struct InsufficientData final : InputError {
    explicit InsufficientData(const std::string& m) : InputError("InsufficientData", m) {}
};

struct MissingTrace final : InputError {
    explicit MissingTrace(const std::string& m) : InputError("MissingTrace", m) {}
};

struct BadInitialPoint final : InputError {
    explicit BadInitialPoint(const std::string& m) : InputError("BadInitialPoint", m) {}
};

struct Unsupported final : InputError {
    explicit Unsupported(const std::string& m) : InputError("Unsupported", m) {}
};

/// Touchstone parse failure; carries the 1-based line number.
struct ParseError final : InputError {
    ParseError(int line, const std::string& m)
        : InputError("ParseError", "line " + std::to_string(line) + ": " + m), line_number(line) {}
    int line_number;
};

struct OrderError final : InputError {
    explicit OrderError(const std::string& m) : InputError("OrderError", m) {}
};

struct ArityError final : InputError {
    explicit ArityError(const std::string& m) : InputError("ArityError", m) {}
};

struct NoResonance final : NoResultError {
    explicit NoResonance(const std::string& m) : NoResultError("NoResonance", m) {}
};

struct NoPassband final : NoResultError {
    explicit NoPassband(const std::string& m) : NoResultError("NoPassband", m) {}
};

struct DegenerateTrace final : NoResultError {
    explicit DegenerateTrace(const std::string& m) : NoResultError("DegenerateTrace", m) {}
};

}  // namespace rfladder
