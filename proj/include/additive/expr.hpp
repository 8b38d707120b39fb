#ifndef ADDITIVE_EXPR_HPP
#define ADDITIVE_EXPR_HPP

#include <memory>
#include <span>
#include <string>

#include "additive/oracle.hpp"

namespace additive {

/// Small deterministic expression language for test functions: numbers,
/// pi, variables x (== x1), x1..x9, + - * / ^ (integer powers), unary
/// minus, parentheses, and sin/cos/exp/abs/sqrt. Covers the linear,
/// affine, polynomial and sinusoid forms the estimator accepts.
class Expression {
 public:
  static Expression parse(std::string_view text);  // throws ParseError

  double eval(std::span<const double> x) const;
  double eval(const Point& p) const { return eval(p.coords); }

  /// Highest variable index referenced (>= 1 even for constants).
  int min_dimension() const { return min_dimension_; }

  const std::string& source() const { return source_; }

  RealOracle oracle(int dimension, Domain domain = Domain::euclidean) const;

 private:
  struct Node;
  std::shared_ptr<const Node> root_;
  int min_dimension_ = 1;
  std::string source_;
};

}  // namespace additive

#endif
