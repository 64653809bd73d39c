#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace densem {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched dimensions, lengths or types.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Zero vector, zero trace, or other input with no meaningful normalization.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public Error {
 public:
  using Error::Error;
};

// Iterative numerics did not converge, or a non-finite value appeared.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

// Missing word, space or basis label.
class LookupError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Lexicon document violations; `path` points into the document
// (e.g. "words.beer.data[1].count").
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace densem
