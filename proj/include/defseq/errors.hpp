#pragma once

#include <stdexcept>

namespace defseq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (non-square, non-Hermitian, bad parameter).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes or ambient dimensions do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A materialization would exceed a configured size cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// The tuple is not a row contraction within tolerance.
class NonContractiveError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent tuple file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace defseq
