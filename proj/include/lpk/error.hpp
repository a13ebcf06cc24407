#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its domain (non-Horn input to a Horn
/// algorithm, an interpretation with foreign atoms, a class violation).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive procedure would exceed the configured atom cap.
class CapacityError : public Error {
 public:
  CapacityError(std::size_t atoms, std::size_t cap)
      : Error("instance needs enumeration over " + std::to_string(atoms) +
              " atoms, cap is " + std::to_string(cap)),
        atoms_(atoms),
        cap_(cap) {}

  std::size_t atoms() const noexcept { return atoms_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t atoms_;
  std::size_t cap_;
};

/// Malformed program or formula text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace lpk
