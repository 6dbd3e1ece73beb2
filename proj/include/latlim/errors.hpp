#pragma once

#include <stdexcept>
#include <string>

namespace latlim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct PreconditionViolated : Error {
  using Error::Error;
};
struct SupportTooLarge : Error {
  using Error::Error;
};
struct UnboundedError : Error {
  using Error::Error;
};
struct EmptyPeriod : Error {
  using Error::Error;
};
struct BadIndices : Error {
  using Error::Error;
};
struct NormNotExact : Error {
  using Error::Error;
};
struct NotMatrixKind : Error {
  using Error::Error;
};
struct SquareNotCommuting : Error {
  using Error::Error;
};
struct ConeIncompatible : Error {
  using Error::Error;
};
struct EdgesNotZero : Error {
  using Error::Error;
};
struct NotContractive : Error {
  using Error::Error;
};
struct NoCommonIndex : Error {
  using Error::Error;
};
struct DifferentSystems : Error {
  using Error::Error;
};
struct NotRepresentable : Error {
  using Error::Error;
};
struct UnknownExample : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

/// Internal-consistency failures (e.g. a certificate the solver produced does
/// not verify). These indicate a bug, never a property of the input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace latlim
