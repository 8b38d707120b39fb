#ifndef ADDITIVE_ORACLE_HPP
#define ADDITIVE_ORACLE_HPP

#include <complex>
#include <functional>

#include "additive/geometry.hpp"

namespace additive {

using Complex = std::complex<double>;

/// Declared domain of an analyzed function.
enum class Domain { euclidean, torus };

/// Deterministic evaluation contract Point -> real. Repeated evaluation at
/// the same point must return bit-identical values (caller's obligation).
struct RealOracle {
  Domain domain = Domain::euclidean;
  int dimension = 1;
  std::function<double(const Point&)> eval;
};

/// Deterministic evaluation contract Point -> complex.
struct ComplexOracle {
  Domain domain = Domain::euclidean;
  int dimension = 1;
  std::function<Complex(const Point&)> eval;
};

inline RealOracle make_real_oracle(int dimension,
                                   std::function<double(const Point&)> fn,
                                   Domain domain = Domain::euclidean) {
  return RealOracle{domain, dimension, std::move(fn)};
}

inline ComplexOracle make_complex_oracle(
    int dimension, std::function<Complex(const Point&)> fn,
    Domain domain = Domain::euclidean) {
  return ComplexOracle{domain, dimension, std::move(fn)};
}

inline ComplexOracle to_complex(const RealOracle& f) {
  return ComplexOracle{f.domain, f.dimension, [eval = f.eval](const Point& x) {
                         return Complex(eval(x), 0.0);
                       }};
}

}  // namespace additive

#endif
