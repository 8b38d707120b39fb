#ifndef ADDITIVE_QUADRATURE_HPP
#define ADDITIVE_QUADRATURE_HPP

#include <cmath>

#include "additive/oracle.hpp"

namespace additive {

/// Midpoint (open) rule over the parallelepiped I, evaluated at shifted
/// nodes x_j + shift with x_j = base + sum_k ((j_k + 1/2)/m_k) u_k.
///
/// Nodes are enumerated in canonical row-major order (axis 0 slowest) and
/// accumulated with compensated summation, so the result is reproducible.
/// Spectrally accurate for smooth I-periodic integrands, O(sum m_k^-2)
/// for C^2 integrands. Throws OracleFailure on a non-finite sample.
Complex midpoint_quadrature(const ComplexOracle& h, const Parallelepiped& I,
                            const GridSpec& grid, const Point& shift);

double midpoint_quadrature(const RealOracle& h, const Parallelepiped& I,
                           const GridSpec& grid, const Point& shift);

/// Neumaier-compensated accumulator; deterministic for a fixed input order.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace additive

#endif
