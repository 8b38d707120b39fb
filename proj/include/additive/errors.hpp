#ifndef ADDITIVE_ERRORS_HPP
#define ADDITIVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace additive {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Generators of a parallelepiped are (numerically) linearly dependent,
/// or a generator system is too ill-conditioned to solve.
struct DegenerateDomain : Error {
  using Error::Error;
};

/// An oracle produced a non-finite value, or was asked for a point it
/// cannot evaluate (e.g. a sample table miss).
struct OracleFailure : Error {
  using Error::Error;
};

/// A QVector or assignment refers to a symbol index outside the basis.
struct UnknownSymbol : Error {
  using Error::Error;
};

/// density_witness was given a window of zero or negative area.
struct InvalidWindow : Error {
  using Error::Error;
};

/// A torus values table is missing grid points.
struct IncompleteData : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// Malformed input: rational strings, expressions, JSON specs, CSV files.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace additive

#endif
