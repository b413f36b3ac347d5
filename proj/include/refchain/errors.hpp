#pragma once

#include <stdexcept>
#include <string>

namespace refchain {

// Malformed input text. The message carries the file kind and line number.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally well-formed input that violates a documented invariant
// (duplicate mention id, gold chain referencing an unknown mention, ...).
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Misuse of a stateful API, e.g. committing the same mention twice.
class StateError : public std::logic_error {
public:
  explicit StateError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace refchain
