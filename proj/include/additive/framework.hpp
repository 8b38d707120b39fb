#ifndef ADDITIVE_FRAMEWORK_HPP
#define ADDITIVE_FRAMEWORK_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "additive/estimator.hpp"

namespace additive::framework {

/// An abstract regularity functional F : B -> C together with its
/// translation system u_1..u_n and alpha-search policy. The default
/// instance is integration over a parallelepiped; the generic linearity
/// engine runs with any F in its place.
struct RegularityFunctional {
  std::string label;
  std::function<Complex(const ComplexOracle&)> apply;
  std::vector<Point> translation_system;
  estimator::AlphaSearchPolicy alpha_policy;

  int dimension() const { return static_cast<int>(translation_system.size()); }
};

/// F(u) = integral of u over I by midpoint quadrature; translation system
/// is I's generator set.
RegularityFunctional integral_functional(
    const Parallelepiped& I, const GridSpec& grid,
    estimator::AlphaSearchPolicy policy = estimator::AlphaSearchPolicy{});

/// F(u) = u(base). Satisfies every axiom except shift invariance (d).
RegularityFunctional point_evaluation_functional(
    const Point& base, std::vector<Point> translation_system,
    estimator::AlphaSearchPolicy policy = estimator::AlphaSearchPolicy{});

/// F identically 0. Fails the nonvanishing axiom (e).
RegularityFunctional zero_functional(
    std::vector<Point> translation_system,
    estimator::AlphaSearchPolicy policy = estimator::AlphaSearchPolicy{});

struct AxiomEntry {
  char axiom;           // 'a'..'e'
  bool passed = true;
  std::string witness;  // failure description, empty when passed
};

struct AxiomReport {
  std::array<AxiomEntry, 5> entries;  // canonical order a..e

  bool all_passed() const;
  const AxiomEntry& entry(char axiom) const;
};

enum class MemberKind {
  linear,    // x -> c.x
  periodic,  // invariant under the translation system
  other,
};

struct FamilyMember {
  std::string name;
  RealOracle g;
  MemberKind kind;
};

/// Generated test family: linear maps with random coefficients, periodic
/// members (exact Hamel residuals, which vanish on the sampling axis, plus
/// nonconstant sinusoids that actually exercise shift invariance),
/// unit-modulus scalars for axiom (a), shifts for axiom (d) (always
/// including 1/4 per axis), and positive rationals for the closure checks.
struct AxiomTestFamily {
  std::vector<FamilyMember> members;
  std::vector<Complex> unit_scalars;
  std::vector<Point> shifts;
  std::vector<Rational> positive_scalars;
};

AxiomTestFamily default_family(int dimension, uint64_t seed);

/// Validates F against the family:
///   (a) F(c h) = c F(h) to 1e-9 for sampled |c| = 1;
///   (b) linear maps are accepted (F applies to e^{i c.x});
///   (c) closure under addition and positive rational scaling (operational:
///       F applies to the generated elements);
///   (d) F(e^{i g_y}) = F(e^{i g}) to 1e-6 for periodic g and sampled y;
///   (e) some rational alpha > 0 has F(e^{i alpha g}) != 0.
AxiomReport check_axioms(const RegularityFunctional& F,
                         const AxiomTestFamily& family);

/// The classification pipeline with every quadrature call replaced by
/// F.apply and the translation system taken from F.
estimator::LinearityVerdict generic_classify(
    const estimator::AnalyzedFunction& f, const RegularityFunctional& F,
    std::span<const estimator::Probe> probes);

}  // namespace additive::framework

#endif
