#include "additive/quadrature.hpp"

#include <cmath>

#include "additive/errors.hpp"

namespace additive {

namespace {

void check_dimensions(int oracle_dim, const Parallelepiped& I,
                      const GridSpec& grid, const Point& shift) {
  const int n = I.dimension();
  if (oracle_dim != n) {
    throw DimensionMismatch("quadrature: oracle dimension != domain dimension");
  }
  if (grid.dimension() != n) {
    throw DimensionMismatch("quadrature: grid dimension != domain dimension");
  }
  if (shift.dimension() != n) {
    throw DimensionMismatch("quadrature: shift dimension != domain dimension");
  }
}

// Walks all midpoint nodes in canonical order: multi-index odometer with
// axis 0 slowest, axis n-1 fastest.
template <typename Visit>
void for_each_node(const Parallelepiped& I, const GridSpec& grid,
                   const Point& shift, Visit&& visit) {
  const int n = I.dimension();
  std::vector<int> idx(n, 0);
  Point node = Point::zeros(n);
  for (;;) {
    for (int k = 0; k < n; ++k) node[k] = I.base()[k] + shift[k];
    for (int k = 0; k < n; ++k) {
      double frac = (idx[k] + 0.5) / grid.resolution[k];
      for (int c = 0; c < n; ++c) node[c] += frac * I.generators()[k][c];
    }
    visit(node);
    int axis = n - 1;
    while (axis >= 0 && ++idx[axis] == grid.resolution[axis]) {
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
}

}  // namespace

Complex midpoint_quadrature(const ComplexOracle& h, const Parallelepiped& I,
                            const GridSpec& grid, const Point& shift) {
  check_dimensions(h.dimension, I, grid, shift);
  CompensatedSum re, im;
  for_each_node(I, grid, shift, [&](const Point& node) {
    Complex v = h.eval(node);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw OracleFailure("quadrature: non-finite oracle value at node " +
                          to_string(node));
    }
    re.add(v.real());
    im.add(v.imag());
  });
  // volume * (sum / count) so constants integrate exactly for any count
  const double count = static_cast<double>(grid.total_nodes());
  return Complex(I.volume() * (re.value() / count),
                 I.volume() * (im.value() / count));
}

double midpoint_quadrature(const RealOracle& h, const Parallelepiped& I,
                           const GridSpec& grid, const Point& shift) {
  check_dimensions(h.dimension, I, grid, shift);
  CompensatedSum acc;
  for_each_node(I, grid, shift, [&](const Point& node) {
    double v = h.eval(node);
    if (!std::isfinite(v)) {
      throw OracleFailure("quadrature: non-finite oracle value at node " +
                          to_string(node));
    }
    acc.add(v);
  });
  return I.volume() * (acc.value() / static_cast<double>(grid.total_nodes()));
}

}  // namespace additive
