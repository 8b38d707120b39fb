#include "additive/geometry.hpp"

#include <cmath>
#include <sstream>

#include "additive/errors.hpp"

namespace additive {

constexpr double kDegeneracyTolerance = 1e-12;

bool Point::all_finite() const {
  for (double c : coords) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

Point operator+(const Point& a, const Point& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatch("point addition: dimensions differ");
  }
  Point r = a;
  for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
  return r;
}

Point operator-(const Point& a, const Point& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatch("point subtraction: dimensions differ");
  }
  Point r = a;
  for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
  return r;
}

Point operator*(double s, const Point& p) {
  Point r = p;
  for (double& c : r.coords) c *= s;
  return r;
}

double dot(const Point& a, const Point& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatch("dot: dimensions differ");
  }
  double s = 0.0;
  for (size_t i = 0; i < a.coords.size(); ++i) s += a.coords[i] * b.coords[i];
  return s;
}

double dot(const std::vector<double>& a, const Point& b) {
  return dot(Point(a), b);
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (int i = 0; i < p.dimension(); ++i) {
    if (i) os << ", ";
    os << p.coords[i];
  }
  os << ")";
  return os.str();
}

GridSpec::GridSpec(std::vector<int> m) : resolution(std::move(m)) {
  if (resolution.empty()) throw DimensionMismatch("grid: empty resolution");
  for (int mk : resolution) {
    if (mk < 1) throw DimensionMismatch("grid: nodes per axis must be >= 1");
  }
}

GridSpec GridSpec::uniform(int dimension, int nodes_per_axis) {
  return GridSpec(std::vector<int>(dimension, nodes_per_axis));
}

long GridSpec::total_nodes() const {
  long total = 1;
  for (int mk : resolution) total *= mk;
  return total;
}

double abs_determinant(const std::vector<Point>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    if (rows[i].dimension() != n) {
      throw DimensionMismatch("determinant: matrix is not square");
    }
    a[i] = rows[i].coords;
  }
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0) return 0.0;
    if (pivot != col) std::swap(a[pivot], a[col]);
    det *= a[col][col];
    for (int r = col + 1; r < n; ++r) {
      double factor = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  return std::fabs(det);
}

Rational exact_determinant(std::vector<std::vector<Rational>> rows) {
  const size_t n = rows.size();
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw DimensionMismatch("determinant: matrix is not square");
    }
  }
  Rational det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(rows[pivot], rows[col]);
      det = -det;
    }
    det *= rows[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      Rational factor = rows[r][col] / rows[col][col];
      for (size_t c = col; c < n; ++c) {
        rows[r][c] -= factor * rows[col][c];
      }
    }
  }
  return det;
}

std::vector<double> solve_linear_system(std::vector<std::vector<double>> a,
                                        std::vector<double> b) {
  const int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    if (std::fabs(a[pivot][col]) <= kDegeneracyTolerance) {
      throw DegenerateDomain("linear solve: pivot below 1e-12");
    }
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (int r = col + 1; r < n; ++r) {
      double factor = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

Parallelepiped::Parallelepiped(Point base, std::vector<Point> generators) {
  const int n = static_cast<int>(generators.size());
  if (n == 0) throw DimensionMismatch("parallelepiped: no generators");
  if (base.dimension() != n) {
    throw DimensionMismatch("parallelepiped: base dimension != generator count");
  }
  for (const auto& u : generators) {
    if (u.dimension() != n) {
      throw DimensionMismatch("parallelepiped: generator dimension mismatch");
    }
    if (!u.all_finite()) {
      throw DegenerateDomain("parallelepiped: non-finite generator");
    }
  }
  if (!base.all_finite()) {
    throw DegenerateDomain("parallelepiped: non-finite base");
  }
  double det = abs_determinant(generators);
  if (det <= kDegeneracyTolerance) {
    throw DegenerateDomain("parallelepiped: |det(generators)| <= 1e-12");
  }
  base_ = std::move(base);
  generators_ = std::move(generators);
  volume_ = det;
}

Parallelepiped Parallelepiped::from_rational(
    const std::vector<Rational>& base,
    const std::vector<std::vector<Rational>>& generators) {
  Rational det = exact_determinant(generators);
  if (det.is_zero()) {
    throw DegenerateDomain("parallelepiped: generators exactly dependent");
  }
  Parallelepiped p;
  p.base_.coords.reserve(base.size());
  for (const auto& c : base) p.base_.coords.push_back(c.to_double());
  for (const auto& row : generators) {
    Point u;
    u.coords.reserve(row.size());
    for (const auto& c : row) u.coords.push_back(c.to_double());
    p.generators_.push_back(std::move(u));
  }
  p.volume_ = det.abs().to_double();
  if (p.base_.dimension() != p.dimension()) {
    throw DimensionMismatch("parallelepiped: base dimension != generator count");
  }
  return p;
}

Parallelepiped Parallelepiped::interval(double a, double b) {
  return Parallelepiped(Point{a}, {Point{b - a}});
}

Parallelepiped Parallelepiped::unit_box(int dimension) {
  std::vector<Point> gens;
  for (int i = 0; i < dimension; ++i) {
    Point e = Point::zeros(dimension);
    e[i] = 1.0;
    gens.push_back(std::move(e));
  }
  return Parallelepiped(Point::zeros(dimension), std::move(gens));
}

}  // namespace additive
