#pragma once

#include <stdexcept>
#include <string>

namespace schemes {

// Base for all library errors. CLI maps the concrete class to an exit code.
struct SchemeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid input: malformed type spec, bad family, bad arguments.
struct ValidationError : SchemeError {
    using SchemeError::SchemeError;
};

// The stored prefix cannot answer the query soundly. Refusal, not a guess.
struct HorizonError : SchemeError {
    using SchemeError::SchemeError;
};

// A bounded search ran out of candidates. Carries no mathematical content
// beyond "not found within the stated bounds".
struct SearchExhausted : SchemeError {
    using SchemeError::SchemeError;
};

} // namespace schemes
