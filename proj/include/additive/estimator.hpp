#ifndef ADDITIVE_ESTIMATOR_HPP
#define ADDITIVE_ESTIMATOR_HPP

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "additive/hamel.hpp"
#include "additive/oracle.hpp"
#include "additive/quadrature.hpp"

namespace additive::estimator {

/// |e^{i a g(y)} - 1| above this fails the phase test.
inline constexpr double kPhaseTolerance = 1e-6;
/// |a g(y) - 2 pi k| below this pins g(y) to the lattice point k.
inline constexpr double kLatticeTolerance = 1e-6;
/// Additivity spot-check tolerance (diagnostics only).
inline constexpr double kAdditivityTolerance = 1e-8;
/// Relative residual allowed when solving c.u_k = f(u_k).
inline constexpr double kGeneratorResidualTolerance = 1e-10;

/// 4096 nodes for n = 1, 64 per axis otherwise (intended for n <= 3).
GridSpec default_grid(int dimension);

/// alpha search over positive rationals <= 1 in Farey order: increasing
/// denominator up to max_denominator, then increasing numerator. The first
/// candidate is always 1/1. A candidate alpha is accepted when
/// |integral of e^{i alpha g}| >= threshold_fraction * volume.
struct AlphaSearchPolicy {
  int max_denominator = 32;
  double threshold_fraction = 0.1;

  AlphaSearchPolicy() = default;
  AlphaSearchPolicy(int max_den, double tau);
};

std::vector<Rational> farey_candidates(int max_denominator);

/// A probe point. For Hamel-backed functions the exact QVector rides along
/// so phase probes and the 1/(7k) scaling stay in exact arithmetic.
struct Probe {
  Point location;
  std::optional<hamel::QVector> exact;

  static Probe at(double x) { return Probe{Point{x}, std::nullopt}; }
  static Probe at(Point p) { return Probe{std::move(p), std::nullopt}; }
  static Probe of(const hamel::QVector& v, const hamel::HamelBasisSpec& basis) {
    return Probe{Point{hamel::embed(basis, v)}, v};
  }

  /// Exact rational scaling when the exact channel is present.
  Probe scaled(const Rational& q) const;
};

/// The function under analysis: a generic binary64 oracle plus an optional
/// exact channel used when both the function and the probe carry one.
struct AnalyzedFunction {
  RealOracle real;
  std::function<double(const hamel::QVector&)> exact;
  std::shared_ptr<const hamel::HamelBasisSpec> basis;  // set iff exact is

  AnalyzedFunction() = default;
  AnalyzedFunction(RealOracle oracle) : real(std::move(oracle)) {}  // NOLINT
};

double value_at(const AnalyzedFunction& f, const Probe& p);

/// Interprets the 1-D coordinate x (an exact dyadic rational) as the span
/// element x * e_axis and evaluates scale * f exactly; this is how Hamel
/// maps enter the estimator. Real-valued variants (e.g. assignments of
/// 2*pi) are expressed through the scale factor.
AnalyzedFunction hamel_oracle(const hamel::AdditiveMap& f, size_t axis = 0,
                              double scale = 1.0);

// ---------------------------------------------------------------------------
// Verdicts

struct Linear {
  std::vector<double> coefficients;
};

struct NonlinearWitness {
  Probe probe;
  Rational alpha;
  Complex phase;    // |phase - 1| > kPhaseTolerance
  double residual;  // |phase - 1|
};

struct Inconclusive {
  std::string reason;
};

struct AdditivitySpotCheck {
  size_t pairs = 0;
  double max_defect = 0.0;
  double tolerance = kAdditivityTolerance;
  bool passed = true;
};

struct Diagnostics {
  std::optional<Rational> alpha;
  Complex alpha_integral{0.0, 0.0};
  std::optional<AdditivitySpotCheck> additivity;
  std::vector<std::string> notes;
};

struct LinearityVerdict {
  std::variant<Linear, NonlinearWitness, Inconclusive> outcome;
  Diagnostics diagnostics;

  bool is_linear() const { return std::holds_alternative<Linear>(outcome); }
  bool is_nonlinear() const {
    return std::holds_alternative<NonlinearWitness>(outcome);
  }
  bool is_inconclusive() const {
    return std::holds_alternative<Inconclusive>(outcome);
  }
  const Linear& linear() const { return std::get<Linear>(outcome); }
  const NonlinearWitness& witness() const {
    return std::get<NonlinearWitness>(outcome);
  }
  const Inconclusive& inconclusive() const {
    return std::get<Inconclusive>(outcome);
  }
};

// ---------------------------------------------------------------------------
// Pipeline operations

/// Solves c . u_k = f(u_k) over the generators of I; f is evaluated at the
/// generator points themselves. Throws DegenerateDomain if the system is
/// singular or the solve residual exceeds 1e-10 relative.
std::vector<double> coefficient_from_generators(const AnalyzedFunction& f,
                                                const Parallelepiped& I);

/// g = f - c.x, the reduction to the zero-initial-value problem. Preserves
/// the exact channel when f has one.
AnalyzedFunction residual_oracle(const AnalyzedFunction& f,
                                 std::vector<double> c);

/// |Q(u, I, grid, y) - Q(u, I, grid, 0)|: quantifies the failure of the
/// period-averaging identity for u.
double shift_invariance_defect(const ComplexOracle& u, const Parallelepiped& I,
                               const Point& y, const GridSpec& grid);
double shift_invariance_defect(const RealOracle& u, const Parallelepiped& I,
                               const Point& y, const GridSpec& grid);

/// ghat(y) = [Q(g, I, grid, y) - Q(g, I, grid, 0)] / volume(I).
/// For exactly additive g this equals g(y) independent of periodicity.
double mean_value_estimate(const RealOracle& g, const Parallelepiped& I,
                           const Point& y, const GridSpec& grid);

/// Integral over I of e^{i alpha g(x)} (alpha applied as binary64 quotient).
Complex exp_integral(const RealOracle& g, const Parallelepiped& I,
                     const Rational& alpha, const GridSpec& grid);

struct AlphaHit {
  Rational alpha;
  Complex value;
};

/// First Farey-order alpha with |exp_integral| >= tau * volume(I), or
/// nullopt when the candidate list is exhausted.
std::optional<AlphaHit> find_alpha(const RealOracle& g,
                                   const Parallelepiped& I,
                                   const AlphaSearchPolicy& policy,
                                   const GridSpec& grid);

struct PhaseSample {
  Probe probe;
  double g_value;
  Complex phase;     // e^{i alpha g(y)}
  double deviation;  // |phase - 1|
};

struct PhaseTestResult {
  bool passed = true;
  std::vector<PhaseSample> samples;
  size_t worst_index = 0;  // max deviation (first on ties)
};

PhaseTestResult phase_test(const AnalyzedFunction& g, const Rational& alpha,
                           std::span<const Probe> probes);

enum class LatticeOutcome {
  refuted,                // phase at y0/(7k0) is e^{2 pi i/7}: additivity +
                          // lattice value contradict, as in the proof
  not_additive_at_probe,  // phase stayed 1: g fails rational homogeneity
  inconclusive,
};

struct LatticeRefutation {
  LatticeOutcome outcome;
  Probe scaled_probe;  // y0 / (7 k0)
  Complex phase;
  double g_value;
};

/// Scales the offending probe to y0/(7 k0) and reads the phase there.
/// Call only with k0 != 0 (throws std::invalid_argument otherwise).
LatticeRefutation lattice_refutation(const AnalyzedFunction& g,
                                     const Rational& alpha, const Probe& y0,
                                     long k0);

/// Full classification pipeline: coefficient recovery, residual reduction,
/// alpha search, phase tests, lattice refutation.
LinearityVerdict classify(const AnalyzedFunction& f, const Parallelepiped& I,
                          const GridSpec& grid, const AlphaSearchPolicy& policy,
                          std::span<const Probe> probes);

struct VectorVerdict {
  std::optional<std::vector<std::vector<double>>> matrix;  // m rows of n
  std::optional<size_t> failed_component;
  std::optional<LinearityVerdict> failure;

  bool is_linear() const { return matrix.has_value(); }
};

/// Componentwise classification of f: R^n -> R^m; assembles the matrix A
/// when every component is linear, else reports the first failure.
VectorVerdict classify_vector_valued(std::span<const AnalyzedFunction> components,
                                     const Parallelepiped& I,
                                     const GridSpec& grid,
                                     const AlphaSearchPolicy& policy,
                                     std::span<const Probe> probes);

// ---------------------------------------------------------------------------
// Shared engine (also driven by the framework module's functionals)

struct IntegrationBackend {
  std::function<Complex(const ComplexOracle&)> apply;
  std::vector<Point> generators;  // translation system u_1..u_n
  double unit_scale;              // |apply(1)|, the volume analogue
};

IntegrationBackend quadrature_backend(const Parallelepiped& I,
                                      const GridSpec& grid);

std::optional<AlphaHit> find_alpha_via(const IntegrationBackend& backend,
                                       const RealOracle& g,
                                       const AlphaSearchPolicy& policy);

LinearityVerdict run_pipeline(const AnalyzedFunction& f,
                              const IntegrationBackend& backend,
                              const AlphaSearchPolicy& policy,
                              std::span<const Probe> probes);

}  // namespace additive::estimator

#endif
