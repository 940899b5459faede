#pragma once

#include <stdexcept>
#include <string>

namespace linesource {

/// Error categories double as process exit codes for the CLI.
enum class ErrorCategory : int {
    usage = 2,
    parse = 3,
    validation = 4,
    singular_evaluation = 5,
    location = 6,
    solver = 7,
    io = 8,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category)
    {
    }

    [[nodiscard]] ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error(ErrorCategory::parse, what), line_(line)
    {
    }
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorCategory::validation, what) {}
};

/// Raised when a kernel is evaluated on (or within the floor radius of) a source segment.
class SingularEvaluationError : public Error {
public:
    SingularEvaluationError(int segment, const std::string& what)
        : Error(ErrorCategory::singular_evaluation, what), segment_(segment)
    {
    }
    [[nodiscard]] int segment() const noexcept { return segment_; }

private:
    int segment_;
};

class LocationError : public Error {
public:
    explicit LocationError(const std::string& what) : Error(ErrorCategory::location, what) {}
};

class SolverError : public Error {
public:
    explicit SolverError(const std::string& what) : Error(ErrorCategory::solver, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

/// Rethrows `e` as the same error type with `context` prepended to the message.
[[noreturn]] inline void rethrow_with_context(const Error& e, const std::string& context)
{
    const std::string what = context + ": " + e.what();
    switch (e.category()) {
    case ErrorCategory::parse:
        if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
            throw ParseError(pe->line(), what);
        }
        break;
    case ErrorCategory::validation:
        throw ValidationError(what);
    case ErrorCategory::singular_evaluation:
        if (const auto* se = dynamic_cast<const SingularEvaluationError*>(&e)) {
            throw SingularEvaluationError(se->segment(), what);
        }
        break;
    case ErrorCategory::location:
        throw LocationError(what);
    case ErrorCategory::solver:
        throw SolverError(what);
    case ErrorCategory::io:
        throw IoError(what);
    case ErrorCategory::usage:
        break;
    }
    throw Error(e.category(), what);
}

} // namespace linesource
