#pragma once

#include <stdexcept>
#include <string>

namespace qcc {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated an operation contract (shapes, ranges, field mismatch).
class UsageError : public Error {
 public:
  using Error::Error;
};

// A verification precondition does not hold (e.g. Ext^1 vanishes).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Something that cannot happen for correct inputs; reaching it is a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace qcc

namespace qcc {

class NoCompatibleLambda : public Error {
 public:
  explicit NoCompatibleLambda(int rank)
      : Error("no compatible Lambda: skew matrix B is singular (rank " + std::to_string(rank) + ")"), rank_(rank) {}
  NoCompatibleLambda(int rank, const std::string& detail) : Error("no compatible Lambda: " + detail), rank_(rank) {}
  int rank() const noexcept { return rank_; }

 private:
  int rank_;
};

}  // namespace qcc
