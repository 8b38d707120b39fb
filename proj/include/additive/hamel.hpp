#ifndef ADDITIVE_HAMEL_HPP
#define ADDITIVE_HAMEL_HPP

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "additive/rational.hpp"

namespace additive::hamel {

struct BasisSymbol {
  std::string label;
  double embedding;
};

/// Finite generator set of a Q-subspace of R. Labels must be unique;
/// embeddings pairwise distinct and nonzero. Q-linear independence of the
/// embeddings is asserted by the caller, not verified (deciding it for
/// computable reals is undecidable in general); the declaration field
/// records the caller's independence argument.
class HamelBasisSpec {
 public:
  explicit HamelBasisSpec(std::vector<BasisSymbol> symbols,
                          std::string independence_declaration = "");

  size_t size() const { return symbols_.size(); }
  const BasisSymbol& symbol(size_t i) const { return symbols_.at(i); }
  const std::vector<BasisSymbol>& symbols() const { return symbols_; }
  std::optional<size_t> index_of(std::string_view label) const;
  const std::string& independence_declaration() const {
    return independence_declaration_;
  }

 private:
  std::vector<BasisSymbol> symbols_;
  std::string independence_declaration_;
};

/// Shipped bases (1), (1, sqrt 2), (1, sqrt 2, sqrt 3). Independence over Q
/// follows from the irrationality of sqrt 2, sqrt 3 and sqrt 6.
HamelBasisSpec basis_q();
HamelBasisSpec basis_q_sqrt2();
HamelBasisSpec basis_q_sqrt2_sqrt3();

/// Element of the Q-span: sparse map symbol index -> rational coordinate.
/// Zero coordinates are never stored; the zero vector is the empty map.
class QVector {
 public:
  QVector() = default;

  static QVector unit(size_t index) {
    QVector v;
    v.set(index, Rational(1));
    return v;
  }

  QVector& set(size_t index, const Rational& value);
  Rational coord(size_t index) const;
  const std::map<size_t, Rational>& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  friend QVector operator+(const QVector& a, const QVector& b);
  friend QVector operator-(const QVector& a, const QVector& b);
  friend QVector operator*(const Rational& q, const QVector& v);
  friend bool operator==(const QVector& a, const QVector& b) {
    return a.coords_ == b.coords_;
  }

  std::string str() const;

 private:
  std::map<size_t, Rational> coords_;
};

/// A Q-linear map on the span, defined by its values on the basis symbols
/// (absent index means the value 0). This is the general solution of
/// f(x+y) = f(x) + f(y) restricted to the span.
class AdditiveMap {
 public:
  AdditiveMap(HamelBasisSpec basis, std::map<size_t, Rational> assignments);
  AdditiveMap(HamelBasisSpec basis,
              const std::vector<std::pair<std::string, Rational>>&
                  assignments_by_label);

  const HamelBasisSpec& basis() const { return basis_; }
  Rational assignment(size_t index) const;
  const std::map<size_t, Rational>& assignments() const { return assignments_; }

 private:
  HamelBasisSpec basis_;
  std::map<size_t, Rational> assignments_;  // zero values not stored
};

/// f(v) = sum_k q_k y_{i_k}, exact. Throws UnknownSymbol for indices
/// outside the basis.
Rational evaluate(const AdditiveMap& f, const QVector& v);

/// Realizes the formal combination as the real number sum_k q_k emb_k,
/// evaluated in binary64.
double embed(const HamelBasisSpec& basis, const QVector& v);

struct AdditivityCounterexample {
  QVector x, y;
  Rational lhs;  // eval(x + y)
  Rational rhs;  // eval(x) + eval(y)
};

struct AdditivityReport {
  bool passed = true;
  size_t pairs_checked = 0;
  std::optional<AdditivityCounterexample> counterexample;
};

using ExactEvaluator = std::function<Rational(const QVector&)>;

/// Checks eval(x+y) == eval(x) + eval(y) with exact rational equality for
/// every pair; reports the first counterexample. Always passes for the
/// exact evaluate() of an AdditiveMap.
AdditivityReport check_additive(
    const ExactEvaluator& eval,
    std::span<const std::pair<QVector, QVector>> pairs);

AdditivityReport check_additive(
    const AdditiveMap& f, std::span<const std::pair<QVector, QVector>> pairs);

/// p is a period of f iff f(x+p) = f(x) for all x, which by linearity is
/// equivalent to f(p) = 0; checked exactly.
bool period_check(const AdditiveMap& f, const QVector& p);

struct Window {
  double x0, x1, y0, y1;
};

struct CellPoint {
  double x, y;
  int cell_i, cell_j;
};

struct CoverageReport {
  int cells;        // M (per side)
  long height;      // H
  double coverage;  // covered cells / M^2
  std::vector<CellPoint> representatives;  // one per covered cell
  unsigned long enumerated = 0;            // vectors visited
};

/// Enumerates QVectors over `arity` coordinates with coordinate heights
/// (max(|num|, den)) bounded by max_height, in increasing-height order with
/// lexicographic tie-break. visit returns false to stop early.
void enumerate_qvectors(size_t arity, long max_height,
                        const std::function<bool(const QVector&)>& visit);

/// Plots (embed(v) reduced into the window x-range by integer translation
/// along a zero-assigned period direction when one exists, evaluate(f, v))
/// over the bounded enumeration and reports cell coverage of the window.
/// Coverage is non-decreasing in height. Throws InvalidWindow on a window
/// of zero or negative area.
CoverageReport density_witness(const AdditiveMap& f, const Window& window,
                               int cells, long height);

}  // namespace additive::hamel

#endif
