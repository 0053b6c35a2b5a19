#pragma once

#include <stdexcept>
#include <string>

namespace gex {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Composition attempted on a pair whose source/target do not match.
struct IncompatibleComposition : Error {
    using Error::Error;
};

struct DuplicateObject : Error {
    using Error::Error;
};

struct UnknownType : Error {
    using Error::Error;
};

struct NotEquivariant : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NotRepresented : Error {
    using Error::Error;
};

// A partial action was applied outside its domain.
struct PartialityViolation : Error {
    using Error::Error;
};

struct NotAPackaging : Error {
    using Error::Error;
};

struct NotAbelian : Error {
    using Error::Error;
};

struct ClosureBudgetExceeded : Error {
    using Error::Error;
};

struct DeskScaleExceeded : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

}  // namespace gex
