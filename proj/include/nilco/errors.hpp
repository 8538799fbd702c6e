#ifndef NILCO_ERRORS_HPP
#define NILCO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nilco {

// Process exit codes used by the command line front end.
enum class ExitCode : int {
    ok = 0,
    usage = 1,
    parse = 2,
    schema = 3,
    unsupported = 4,
    bound_exceeded = 5,
    fixture_mismatch = 6,
};

class Error : public std::runtime_error {
public:
    Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ExitCode code() const noexcept { return code_; }

private:
    ExitCode code_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ExitCode::parse, what) {}
};

// Schema, shape and validation failures share one exit code.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error(ExitCode::schema, what) {}
};

class DimensionError : public SchemaError {
public:
    explicit DimensionError(const std::string& what) : SchemaError(what) {}
};

class ValidationError : public SchemaError {
public:
    explicit ValidationError(const std::string& what) : SchemaError(what) {}
};

class UnsupportedClass : public Error {
public:
    explicit UnsupportedClass(const std::string& what) : Error(ExitCode::unsupported, what) {}
};

// Refusal to label classes of a relation with infinitely many classes.
class InfiniteClasses : public Error {
public:
    explicit InfiniteClasses(const std::string& what) : Error(ExitCode::unsupported, what) {}
};

class BoundExceeded : public Error {
public:
    explicit BoundExceeded(const std::string& what) : Error(ExitCode::bound_exceeded, what) {}
};

} // namespace nilco

#endif
