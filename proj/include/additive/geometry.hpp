#ifndef ADDITIVE_GEOMETRY_HPP
#define ADDITIVE_GEOMETRY_HPP

#include <string>
#include <vector>

#include "additive/rational.hpp"

namespace additive {

/// A point of R^n with finite binary64 coordinates.
struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}
  Point(std::initializer_list<double> c) : coords(c) {}

  static Point zeros(int n) { return Point(std::vector<double>(n, 0.0)); }

  int dimension() const { return static_cast<int>(coords.size()); }
  double operator[](size_t i) const { return coords[i]; }
  double& operator[](size_t i) { return coords[i]; }
  bool all_finite() const;

  friend bool operator==(const Point& a, const Point& b) {
    return a.coords == b.coords;
  }
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double s, const Point& p);
double dot(const Point& a, const Point& b);
double dot(const std::vector<double>& a, const Point& b);
std::string to_string(const Point& p);

/// Midpoint-rule discretization: nodes per axis.
struct GridSpec {
  std::vector<int> resolution;

  explicit GridSpec(std::vector<int> m);
  GridSpec(std::initializer_list<int> m) : GridSpec(std::vector<int>(m)) {}

  static GridSpec uniform(int dimension, int nodes_per_axis);

  int dimension() const { return static_cast<int>(resolution.size()); }
  long total_nodes() const;
};

/// Compact parallelepiped: base point plus n linearly independent
/// generators u_1..u_n. An interval is the n = 1 case.
class Parallelepiped {
 public:
  Parallelepiped(Point base, std::vector<Point> generators);

  /// Exact-rational construction path: degeneracy is decided by an exact
  /// determinant instead of the 1e-12 tolerance.
  static Parallelepiped from_rational(
      const std::vector<Rational>& base,
      const std::vector<std::vector<Rational>>& generators);

  static Parallelepiped interval(double a, double b);
  static Parallelepiped unit_box(int dimension);

  const Point& base() const { return base_; }
  const std::vector<Point>& generators() const { return generators_; }
  int dimension() const { return static_cast<int>(generators_.size()); }
  double volume() const { return volume_; }

 private:
  Parallelepiped() = default;
  Point base_;
  std::vector<Point> generators_;
  double volume_ = 0.0;
};

/// |det| of a square matrix given as rows; Gaussian elimination with
/// partial pivoting.
double abs_determinant(const std::vector<Point>& rows);

/// Exact determinant of a rational matrix (rows).
Rational exact_determinant(std::vector<std::vector<Rational>> rows);

/// Solves A x = b for square A (rows), partial pivoting.
/// Throws DegenerateDomain when a pivot vanishes.
std::vector<double> solve_linear_system(std::vector<std::vector<double>> a,
                                        std::vector<double> b);

}  // namespace additive

#endif
