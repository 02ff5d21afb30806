#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cbr {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An invariant was violated while constructing or validating a value.
/// `code()` names the violated rule ("length-mismatch", "negative-weight", ...)
/// so callers and tests can tell the cases apart without string-matching
/// the human-readable message.
class ValidationError : public Error {
public:
    ValidationError(std::string code, const std::string& msg)
        : Error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// A binary operation received values bound to different alphabets, or a
/// chain of transformations does not line up. Alphabets compare by object
/// identity, never by structure.
class AlphabetMismatchError : public Error {
public:
    using Error::Error;
};

/// Uniform-preimage knowledge was asked to reconstruct through an output
/// letter that has no preimage yet carries positive probability.
class EmptyPreimageError : public Error {
public:
    using Error::Error;
};

/// The spec document is not syntactically well formed.
class ParseError : public Error {
public:
    using Error::Error;
};

/// The spec document references a name that is never defined.
class UnresolvedReferenceError : public Error {
public:
    UnresolvedReferenceError(std::string name, const std::string& msg)
        : Error(msg), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

} // namespace cbr
