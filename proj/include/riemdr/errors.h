#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "riemdr/types.h"

namespace riemdr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input lies outside the domain of a map (cut locus, singular matrix, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class NonFiniteObjective : public Error {
 public:
  using Error::Error;
};

class DegenerateNeighborhood : public Error {
 public:
  using Error::Error;
};

class NoNeighbors : public Error {
 public:
  using Error::Error;
};

class NoPositiveSpectrum : public Error {
 public:
  using Error::Error;
};

class SingularScatter : public Error {
 public:
  using Error::Error;
};

class UnknownKind : public Error {
 public:
  using Error::Error;
};

class MissingLabelColumn : public Error {
 public:
  using Error::Error;
};

class ClassTooSmall : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver hit its iteration cap. `last_iterate` carries the
/// final state (point data, or empty when not applicable).
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, int iterations, double residual,
                Matrix last_iterate = Matrix())
      : Error(what),
        iterations_(iterations),
        residual_(residual),
        last_iterate_(std::move(last_iterate)) {}

  int iterations() const { return iterations_; }
  double residual() const { return residual_; }
  const Matrix& last_iterate() const { return last_iterate_; }

 private:
  int iterations_;
  double residual_;
  Matrix last_iterate_;
};

class DisconnectedGraph : public Error {
 public:
  explicit DisconnectedGraph(std::vector<std::size_t> component_sizes);

  const std::vector<std::size_t>& component_sizes() const {
    return component_sizes_;
  }

 private:
  std::vector<std::size_t> component_sizes_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t col)
      : Error(what + " (row " + std::to_string(row) + ", col " +
              std::to_string(col) + ")"),
        row_(row),
        col_(col) {}

  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

}  // namespace riemdr
