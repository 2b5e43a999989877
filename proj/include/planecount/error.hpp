#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace planecount {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point set violates general position, distinct x, unique extreme y, or
/// the coordinate bound.
class GeometryError : public Error {
 public:
  enum class Kind { DuplicateX, Collinear, NonUniqueExtremeY, CoordinateOverflow, Empty };

  GeometryError(Kind kind, std::vector<std::size_t> indices, const std::string& what)
      : Error(what), kind_(kind), indices_(std::move(indices)) {}

  Kind kind() const noexcept { return kind_; }
  /// Input-order indices of the offending points.
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  Kind kind_;
  std::vector<std::size_t> indices_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MemoryBudgetExceeded : public Error {
 public:
  explicit MemoryBudgetExceeded(std::size_t limit)
      : Error("node cap exceeded (" + std::to_string(limit) + " nodes)"), limit_(limit) {}
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

class FormatError : public Error {
 public:
  FormatError(std::size_t offset, const std::string& what)
      : Error("DAG format error at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class OddSize : public Error {
 public:
  OddSize() : Error("point set has odd size") {}
};

class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t n, std::size_t cap)
      : Error("oracle cap exceeded: n = " + std::to_string(n) + " > " + std::to_string(cap)) {}
};

class NoExtreme : public Error {
 public:
  NoExtreme() : Error("combination has no extreme element") {}
};

class ReplayRejected : public Error {
 public:
  explicit ReplayRejected(std::size_t step)
      : Error("replay rejected at step " + std::to_string(step)), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace planecount
