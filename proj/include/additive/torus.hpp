#ifndef ADDITIVE_TORUS_HPP
#define ADDITIVE_TORUS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "additive/estimator.hpp"
#include "additive/oracle.hpp"
#include "additive/rational.hpp"

namespace additive::torus {

/// Tolerance for the torsion checker's additivity and zero tests.
inline constexpr double kTorsionTolerance = 1e-9;

/// Point of the flat torus T^n = R^n / Z^n, held as exact rationals in
/// [0,1). Addition wraps mod 1 exactly.
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(std::vector<Rational> coords);
  static TorusPoint zero(int dimension);

  int dimension() const { return static_cast<int>(coords_.size()); }
  const Rational& operator[](size_t i) const { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }
  Point to_point() const;

  /// (q * x_k) mod 1 per coordinate; for q = 1/m this picks the canonical
  /// m-th root representative, a preimage under multiplication by m.
  TorusPoint scaled(const Rational& q) const;

  friend TorusPoint operator+(const TorusPoint& a, const TorusPoint& b);
  friend bool operator==(const TorusPoint& a, const TorusPoint& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator<(const TorusPoint& a, const TorusPoint& b);

  std::string str() const;

 private:
  std::vector<Rational> coords_;
};

inline TorusPoint torus_add(const TorusPoint& a, const TorusPoint& b) {
  return a + b;
}

/// The subgroup of points with all coordinates in {0, 1/q, ..., (q-1)/q};
/// order q^n. Canonical enumeration is the odometer over digit tuples,
/// axis 0 slowest.
struct GridSubgroup {
  int denominator;
  int dimension;

  GridSubgroup(int q, int n);
  long order() const;
  TorusPoint point(std::span<const int> digits) const;
  std::vector<int> digits_of(long flat_index) const;
  long flat_index(std::span<const int> digits) const;
};

/// Values of a candidate homomorphism on a full grid subgroup, in canonical
/// order.
class ValuesTable {
 public:
  ValuesTable(GridSubgroup group, std::vector<double> values);

  /// Builds from (point, value) rows; every coordinate must be a fraction
  /// k/q on the grid. Throws IncompleteData naming the first missing point,
  /// ParseError for duplicates or off-grid coordinates.
  static ValuesTable from_entries(
      int q, int n,
      std::span<const std::pair<std::vector<Rational>, double>> entries);

  const GridSubgroup& group() const { return group_; }
  double at(long flat_index) const { return values_[flat_index]; }
  const std::vector<double>& values() const { return values_; }

 private:
  GridSubgroup group_;
  std::vector<double> values_;
};

struct TorsionVerdict {
  enum class Kind { zero, additivity_violation, nonzero_value };
  Kind kind = Kind::zero;
  std::optional<TorusPoint> x, y;  // first violating pair / offending point
  double defect = 0.0;             // |f(x+y) - f(x) - f(y)|
  double value = 0.0;              // offending value

  bool is_zero() const { return kind == Kind::zero; }
};

/// On torsion points the conclusion f(x) = 0 follows from additivity alone
/// (q.x = 0 forces q.f(x) = f(0) = 0). Checks f(0) = 0 and all additivity
/// pairs to 1e-9 in canonical order, then that every value vanishes; a
/// nonzero value with passing additivity is mathematically impossible.
TorsionVerdict torsion_vanishing(const ValuesTable& table);

/// Midpoint quadrature over the fundamental domain [0,1)^n with exact
/// rational node arithmetic: nodes ((2j+1)/(2m) + shift) mod 1 are formed
/// as rationals, sorted, and summed in that canonical order. A grid-aligned
/// rational shift therefore permutes the node multiset and reproduces the
/// unshifted sum bit for bit.
Complex torus_quadrature(const ComplexOracle& h, const GridSpec& grid,
                         const TorusPoint& shift);

/// |Q(h shifted by y) - Q(h)| over the fundamental domain.
double haar_shift_defect(const ComplexOracle& h, const TorusPoint& y,
                         const GridSpec& grid);
double haar_shift_defect(const RealOracle& h, const TorusPoint& y,
                         const GridSpec& grid);

struct TorusWitness {
  TorusPoint probe;
  Rational alpha;
  Complex phase;
  double residual;
  std::string kind;  // "phase" | "lattice-refuted" | "not-additive" | ...
};

struct TorusVerdict {
  bool zero = false;
  std::optional<TorusWitness> witness;
  std::optional<Rational> alpha;
  std::vector<std::string> notes;
};

/// The estimator pipeline specialized to the torus: I is the fundamental
/// domain, the linear part is forced to c = 0 (a homomorphism T^n -> R has
/// none), and alpha candidates are restricted to 1/m, m <= max_denominator,
/// so that scaling by alpha maps the fundamental domain into itself.
/// Verdict Zero iff the phase test passes for the found alpha and every
/// probed value is a lattice-free zero.
TorusVerdict torus_classify(const RealOracle& f, const GridSpec& grid,
                            const estimator::AlphaSearchPolicy& policy,
                            std::span<const TorusPoint> probes);

}  // namespace additive::torus

#endif
