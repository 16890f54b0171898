#ifndef RUQ_ERRORS_HPP
#define RUQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ruq {

// Caller passed something outside the documented contract (bad flag value,
// parameter outside its mathematical domain, unsupported combination).
// The CLI maps this to exit code 2.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// A parameter is outside the mathematical domain of an operation.
class DomainError : public UsageError {
public:
    explicit DomainError(const std::string& what) : UsageError(what) {}
};

// Problems with external inputs (files, streams). CLI exit code 3.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t line)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public InputError {
public:
    explicit ValidationError(const std::string& what) : InputError(what) {}
};

// A requested enumeration exceeds a configured cap.
class ResourceError : public InputError {
public:
    explicit ResourceError(const std::string& what) : InputError(what) {}
};

}  // namespace ruq

#endif
