#include "additive/framework.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "additive/errors.hpp"
#include "additive/hamel.hpp"
#include "additive/quadrature.hpp"

namespace additive::framework {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexOracle exp_of(const RealOracle& g, double alpha = 1.0) {
  return ComplexOracle{g.domain, g.dimension,
                       [eval = g.eval, alpha](const Point& x) {
                         return std::polar(1.0, alpha * eval(x));
                       }};
}

ComplexOracle constant_one(int dimension) {
  return ComplexOracle{Domain::euclidean, dimension,
                       [](const Point&) { return Complex(1.0, 0.0); }};
}

ComplexOracle shifted(const ComplexOracle& h, const Point& y) {
  return ComplexOracle{h.domain, h.dimension,
                       [eval = h.eval, y](const Point& x) { return eval(x + y); }};
}

ComplexOracle scaled_by(const ComplexOracle& h, Complex c) {
  return ComplexOracle{h.domain, h.dimension,
                       [eval = h.eval, c](const Point& x) { return c * eval(x); }};
}

RealOracle real_sum(const RealOracle& a, const RealOracle& b) {
  return RealOracle{a.domain, a.dimension,
                    [ea = a.eval, eb = b.eval](const Point& x) {
                      return ea(x) + eb(x);
                    }};
}

RealOracle real_scale(const RealOracle& a, double s) {
  return RealOracle{a.domain, a.dimension,
                    [eval = a.eval, s](const Point& x) { return s * eval(x); }};
}

estimator::IntegrationBackend backend_of(const RegularityFunctional& F) {
  estimator::IntegrationBackend backend;
  backend.apply = F.apply;
  backend.generators = F.translation_system;
  backend.unit_scale = std::abs(F.apply(constant_one(F.dimension())));
  return backend;
}

}  // namespace

RegularityFunctional integral_functional(const Parallelepiped& I,
                                         const GridSpec& grid,
                                         estimator::AlphaSearchPolicy policy) {
  RegularityFunctional F;
  F.label = "integral";
  F.apply = [I, grid](const ComplexOracle& u) {
    return midpoint_quadrature(u, I, grid, Point::zeros(I.dimension()));
  };
  F.translation_system = I.generators();
  F.alpha_policy = policy;
  return F;
}

RegularityFunctional point_evaluation_functional(
    const Point& base, std::vector<Point> translation_system,
    estimator::AlphaSearchPolicy policy) {
  RegularityFunctional F;
  F.label = "point-eval";
  F.apply = [base](const ComplexOracle& u) { return u.eval(base); };
  F.translation_system = std::move(translation_system);
  F.alpha_policy = policy;
  return F;
}

RegularityFunctional zero_functional(std::vector<Point> translation_system,
                                     estimator::AlphaSearchPolicy policy) {
  RegularityFunctional F;
  F.label = "zero";
  F.apply = [](const ComplexOracle&) { return Complex(0.0, 0.0); };
  F.translation_system = std::move(translation_system);
  F.alpha_policy = policy;
  return F;
}

bool AxiomReport::all_passed() const {
  for (const auto& e : entries) {
    if (!e.passed) return false;
  }
  return true;
}

const AxiomEntry& AxiomReport::entry(char axiom) const {
  return entries.at(static_cast<size_t>(axiom - 'a'));
}

AxiomTestFamily default_family(int dimension, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  std::uniform_real_distribution<double> amplitude(0.5, 3.0);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_int_distribution<int> frequency(1, 3);
  std::uniform_int_distribution<long> small_num(1, 12);

  AxiomTestFamily family;

  for (int i = 0; i < 8; ++i) {
    std::vector<double> c(dimension);
    for (double& ck : c) ck = coef(rng);
    std::ostringstream name;
    name << "linear#" << i;
    family.members.push_back(
        {name.str(),
         RealOracle{Domain::euclidean, dimension,
                    [c](const Point& x) { return dot(c, x); }},
         MemberKind::linear});
  }

  // Periodic members. Hamel residuals are exactly zero on the sampling
  // axis (the residual of f at its own generator value), so nonconstant
  // sinusoids are included as well; those are what distinguish a
  // shift-invariant functional from, say, point evaluation.
  if (dimension == 1) {
    for (int i = 0; i < 4; ++i) {
      hamel::AdditiveMap wild(
          hamel::basis_q_sqrt2(),
          std::map<size_t, Rational>{
              {1, Rational(small_num(rng), small_num(rng))}});
      auto f = estimator::hamel_oracle(wild);
      auto c = estimator::coefficient_from_generators(
          f, Parallelepiped::interval(0.0, 1.0));
      auto g = estimator::residual_oracle(f, c);
      std::ostringstream name;
      name << "hamel-residual#" << i;
      family.members.push_back({name.str(), g.real, MemberKind::periodic});
    }
  }
  for (int i = 0; i < 4; ++i) {
    double a = amplitude(rng);
    int k = frequency(rng);
    if (i == 0) {  // the canonical shift-invariance witness
      a = 1.0;
      k = 1;
    }
    std::ostringstream name;
    name << "sinusoid#" << i << " (" << a << "*sin(2pi*" << k << "*s))";
    family.members.push_back(
        {name.str(),
         RealOracle{Domain::euclidean, dimension,
                    [a, k](const Point& x) {
                      double s = 0.0;
                      for (double xi : x.coords) s += xi;
                      return a * std::sin(kTwoPi * k * s);
                    }},
         MemberKind::periodic});
  }

  for (int i = 0; i < 8; ++i) {
    family.unit_scalars.push_back(std::polar(1.0, angle(rng)));
  }

  Point quarter = Point::zeros(dimension);
  for (int k = 0; k < dimension; ++k) quarter[k] = 0.25;
  family.shifts.push_back(quarter);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 3; ++i) {
    Point y = Point::zeros(dimension);
    for (int k = 0; k < dimension; ++k) y[k] = unit(rng);
    family.shifts.push_back(y);
  }

  family.positive_scalars = {Rational(1, 2), Rational(2, 3), Rational(3)};
  return family;
}

AxiomReport check_axioms(const RegularityFunctional& F,
                         const AxiomTestFamily& family) {
  AxiomReport report;
  for (int i = 0; i < 5; ++i) {
    report.entries[i] = AxiomEntry{static_cast<char>('a' + i), true, ""};
  }
  auto fail = [&report](char axiom, const std::string& witness) {
    auto& entry = report.entries[axiom - 'a'];
    if (entry.passed) {
      entry.passed = false;
      entry.witness = witness;
    }
  };

  // (a) F(c h) = c F(h) for |c| = 1.
  for (const auto& member : family.members) {
    ComplexOracle h = exp_of(member.g);
    Complex fh;
    try {
      fh = F.apply(h);
    } catch (const Error& e) {
      fail('a', "F failed on e^{i " + member.name + "}: " + e.what());
      continue;
    }
    for (Complex c : family.unit_scalars) {
      Complex lhs = F.apply(scaled_by(h, c));
      if (std::abs(lhs - c * fh) > 1e-9) {
        std::ostringstream w;
        w << member.name << ", c = (" << c.real() << ", " << c.imag()
          << "): |F(ch) - cF(h)| = " << std::abs(lhs - c * fh);
        fail('a', w.str());
        break;
      }
    }
  }

  // (b) The maps x -> c.x are accepted by F (through their exponential).
  for (const auto& member : family.members) {
    if (member.kind != MemberKind::linear) continue;
    try {
      Complex v = F.apply(exp_of(member.g));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        fail('b', member.name + ": F returned a non-finite value");
      }
    } catch (const Error& e) {
      fail('b', member.name + ": " + e.what());
    }
  }

  // (c) Closure under addition and positive rational scaling.
  for (size_t i = 0; i + 1 < family.members.size(); i += 2) {
    try {
      F.apply(exp_of(real_sum(family.members[i].g, family.members[i + 1].g)));
      for (const Rational& q : family.positive_scalars) {
        F.apply(exp_of(real_scale(family.members[i].g, q.to_double())));
      }
    } catch (const Error& e) {
      fail('c', family.members[i].name + " closure: " + e.what());
    }
  }

  // (d) Shift invariance on periodic members.
  for (const auto& member : family.members) {
    if (member.kind != MemberKind::periodic) continue;
    ComplexOracle h = exp_of(member.g);
    Complex fh = F.apply(h);
    for (const Point& y : family.shifts) {
      Complex fhy = F.apply(shifted(h, y));
      if (std::abs(fhy - fh) > 1e-6) {
        std::ostringstream w;
        w << member.name << ", y = " << to_string(y)
          << ": |F(e^{i g_y}) - F(e^{i g})| = " << std::abs(fhy - fh);
        fail('d', w.str());
        break;
      }
    }
  }

  // (e) Some rational alpha > 0 has F(e^{i alpha g}) != 0.
  estimator::IntegrationBackend backend = backend_of(F);
  for (const auto& member : family.members) {
    auto hit = estimator::find_alpha_via(backend, member.g, F.alpha_policy);
    if (!hit) {
      fail('e', member.name + ": no alpha up to denominator " +
                    std::to_string(F.alpha_policy.max_denominator) +
                    " gives |F(e^{i alpha g})| above threshold");
      break;
    }
  }

  return report;
}

estimator::LinearityVerdict generic_classify(
    const estimator::AnalyzedFunction& f, const RegularityFunctional& F,
    std::span<const estimator::Probe> probes) {
  return estimator::run_pipeline(f, backend_of(F), F.alpha_policy, probes);
}

}  // namespace additive::framework
