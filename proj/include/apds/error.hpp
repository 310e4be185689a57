#pragma once

#include <stdexcept>
#include <string>

namespace apds {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

// select-style queries asking for an occurrence that does not exist
class NotFound : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class EmptyInput : public InvalidInput {
public:
    EmptyInput() : InvalidInput("empty input") {}
};

class InvalidSymbol : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class InvalidPermutation : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class InvalidFunction : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class ParameterError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

// malformed or incompatible serialized data
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace apds
