#ifndef ADDITIVE_SAMPLE_TABLE_HPP
#define ADDITIVE_SAMPLE_TABLE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "additive/oracle.hpp"
#include "additive/torus.hpp"

namespace additive {

/// Tabulated function samples from CSV (header `x1,...,xn,value`). The
/// oracle answers only at tabulated points (1e-9 coordinate tolerance);
/// anything else is an OracleFailure.
class SampleTable {
 public:
  static SampleTable load_csv(const std::string& path);
  static SampleTable parse_csv(std::istream& in, const std::string& origin);

  int dimension() const { return dimension_; }
  size_t size() const { return rows_.size(); }

  RealOracle oracle(Domain domain = Domain::euclidean) const;

  /// Requires every midpoint node of (I, grid) to be present; throws
  /// ParseError naming the first missing node in canonical order.
  void validate_grid(const Parallelepiped& I, const GridSpec& grid) const;

 private:
  struct Row {
    std::vector<double> coords;
    double value;
  };
  const Row* find(const Point& p) const;

  int dimension_ = 0;
  std::vector<Row> rows_;  // sorted lexicographically by coords
};

/// Torus values table from CSV rows `x1,...,xn,value` with coordinates as
/// exact "p/q" strings.
torus::ValuesTable load_torus_values_csv(const std::string& path, int q,
                                         int dimension);

}  // namespace additive

#endif
