#include "additive/hamel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "additive/errors.hpp"

namespace additive::hamel {

HamelBasisSpec::HamelBasisSpec(std::vector<BasisSymbol> symbols,
                               std::string independence_declaration)
    : symbols_(std::move(symbols)),
      independence_declaration_(std::move(independence_declaration)) {
  if (symbols_.empty()) {
    throw ParseError("hamel basis: at least one symbol required");
  }
  std::set<std::string> labels;
  std::set<double> embeddings;
  for (const auto& s : symbols_) {
    if (!labels.insert(s.label).second) {
      throw ParseError("hamel basis: duplicate label \"" + s.label + "\"");
    }
    if (!std::isfinite(s.embedding) || s.embedding == 0.0) {
      throw ParseError("hamel basis: embedding of \"" + s.label +
                       "\" must be finite and nonzero");
    }
    if (!embeddings.insert(s.embedding).second) {
      throw ParseError("hamel basis: embeddings must be pairwise distinct");
    }
  }
}

std::optional<size_t> HamelBasisSpec::index_of(std::string_view label) const {
  for (size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].label == label) return i;
  }
  return std::nullopt;
}

HamelBasisSpec basis_q() {
  return HamelBasisSpec({{"e1", 1.0}}, "the singleton {1} is trivially independent");
}

HamelBasisSpec basis_q_sqrt2() {
  return HamelBasisSpec({{"e1", 1.0}, {"e2", std::sqrt(2.0)}},
                        "1, sqrt2 independent over Q since sqrt2 is irrational");
}

HamelBasisSpec basis_q_sqrt2_sqrt3() {
  return HamelBasisSpec(
      {{"e1", 1.0}, {"e2", std::sqrt(2.0)}, {"e3", std::sqrt(3.0)}},
      "1, sqrt2, sqrt3 independent over Q (sqrt2, sqrt3, sqrt6 irrational)");
}

QVector& QVector::set(size_t index, const Rational& value) {
  if (value.is_zero()) {
    coords_.erase(index);
  } else {
    coords_[index] = value;
  }
  return *this;
}

Rational QVector::coord(size_t index) const {
  auto it = coords_.find(index);
  return it == coords_.end() ? Rational(0) : it->second;
}

QVector operator+(const QVector& a, const QVector& b) {
  QVector r = a;
  for (const auto& [idx, q] : b.coords_) {
    r.set(idx, r.coord(idx) + q);
  }
  return r;
}

QVector operator-(const QVector& a, const QVector& b) {
  QVector r = a;
  for (const auto& [idx, q] : b.coords_) {
    r.set(idx, r.coord(idx) - q);
  }
  return r;
}

QVector operator*(const Rational& q, const QVector& v) {
  QVector r;
  if (q.is_zero()) return r;
  for (const auto& [idx, c] : v.coords_) {
    r.coords_[idx] = q * c;
  }
  return r;
}

std::string QVector::str() const {
  if (coords_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, q] : coords_) {
    if (!first) os << " + ";
    os << "(" << q << ")e" << (idx + 1);
    first = false;
  }
  return os.str();
}

AdditiveMap::AdditiveMap(HamelBasisSpec basis,
                         std::map<size_t, Rational> assignments)
    : basis_(std::move(basis)) {
  for (auto& [idx, value] : assignments) {
    if (idx >= basis_.size()) {
      throw UnknownSymbol("additive map: assignment index " +
                          std::to_string(idx + 1) + " outside basis");
    }
    if (!value.is_zero()) assignments_.emplace(idx, std::move(value));
  }
}

AdditiveMap::AdditiveMap(
    HamelBasisSpec basis,
    const std::vector<std::pair<std::string, Rational>>& assignments_by_label)
    : basis_(std::move(basis)) {
  for (const auto& [label, value] : assignments_by_label) {
    auto idx = basis_.index_of(label);
    if (!idx) {
      throw UnknownSymbol("additive map: unknown symbol \"" + label + "\"");
    }
    if (!value.is_zero()) assignments_[*idx] = value;
  }
}

Rational AdditiveMap::assignment(size_t index) const {
  auto it = assignments_.find(index);
  return it == assignments_.end() ? Rational(0) : it->second;
}

Rational evaluate(const AdditiveMap& f, const QVector& v) {
  Rational sum;
  for (const auto& [idx, q] : v.coords()) {
    if (idx >= f.basis().size()) {
      throw UnknownSymbol("evaluate: symbol index " + std::to_string(idx + 1) +
                          " outside basis of size " +
                          std::to_string(f.basis().size()));
    }
    sum += q * f.assignment(idx);
  }
  return sum;
}

double embed(const HamelBasisSpec& basis, const QVector& v) {
  double sum = 0.0;
  for (const auto& [idx, q] : v.coords()) {
    if (idx >= basis.size()) {
      throw UnknownSymbol("embed: symbol index " + std::to_string(idx + 1) +
                          " outside basis of size " +
                          std::to_string(basis.size()));
    }
    sum += q.to_double() * basis.symbol(idx).embedding;
  }
  return sum;
}

AdditivityReport check_additive(
    const ExactEvaluator& eval,
    std::span<const std::pair<QVector, QVector>> pairs) {
  AdditivityReport report;
  for (const auto& [x, y] : pairs) {
    Rational lhs = eval(x + y);
    Rational rhs = eval(x) + eval(y);
    ++report.pairs_checked;
    if (lhs != rhs) {
      report.passed = false;
      report.counterexample = AdditivityCounterexample{x, y, lhs, rhs};
      return report;
    }
  }
  return report;
}

AdditivityReport check_additive(
    const AdditiveMap& f, std::span<const std::pair<QVector, QVector>> pairs) {
  return check_additive(
      [&f](const QVector& v) { return evaluate(f, v); }, pairs);
}

bool period_check(const AdditiveMap& f, const QVector& p) {
  return evaluate(f, p).is_zero();
}

namespace {

struct Fraction {
  long num;
  long den;
};

// Reduced fractions ordered by (height, num, den), where
// height = max(|num|, den). Height 1 is {-1/1, 0/1, 1/1}.
std::vector<Fraction> fractions_of_height(long h) {
  std::vector<Fraction> out;
  if (h == 1) {
    out = {{-1, 1}, {0, 1}, {1, 1}};
    return out;
  }
  for (long num = -h; num <= h; ++num) {
    long a = std::labs(num);
    for (long den = 1; den <= h; ++den) {
      if (std::max(a, den) != h) continue;
      if (std::gcd(a, den) != 1) continue;
      out.push_back({num, den});
    }
  }
  std::sort(out.begin(), out.end(), [](const Fraction& a, const Fraction& b) {
    return a.num != b.num ? a.num < b.num : a.den < b.den;
  });
  return out;
}

struct FractionTable {
  std::vector<Fraction> fractions;     // concatenated by height
  std::vector<size_t> count_le;        // count_le[h] = #fractions of height <= h
};

FractionTable build_table(long max_height) {
  FractionTable t;
  t.count_le.assign(static_cast<size_t>(max_height) + 1, 0);
  for (long h = 1; h <= max_height; ++h) {
    auto layer = fractions_of_height(h);
    t.fractions.insert(t.fractions.end(), layer.begin(), layer.end());
    t.count_le[h] = t.fractions.size();
  }
  return t;
}

// Emits, in lexicographic rank order, all vectors over `arity` coordinates
// drawn from ranks [0, hi) such that at least one coordinate has rank >= lo
// when `need_high` is set. Returns false when the visitor stopped.
bool emit_layer(const FractionTable& table, std::vector<size_t>& ranks,
                size_t pos, size_t arity, size_t lo, size_t hi, bool need_high,
                const std::function<bool(const QVector&)>& visit) {
  if (pos == arity) {
    QVector v;
    for (size_t k = 0; k < arity; ++k) {
      const Fraction& f = table.fractions[ranks[k]];
      if (f.num != 0) v.set(k, Rational(f.num, f.den));
    }
    return visit(v);
  }
  const size_t remaining = arity - pos;
  if (need_high) {
    if (remaining > 1) {
      for (size_t r = 0; r < lo; ++r) {
        ranks[pos] = r;
        if (!emit_layer(table, ranks, pos + 1, arity, lo, hi, true, visit)) {
          return false;
        }
      }
    }
    for (size_t r = lo; r < hi; ++r) {
      ranks[pos] = r;
      if (!emit_layer(table, ranks, pos + 1, arity, lo, hi, false, visit)) {
        return false;
      }
    }
  } else {
    for (size_t r = 0; r < hi; ++r) {
      ranks[pos] = r;
      if (!emit_layer(table, ranks, pos + 1, arity, lo, hi, false, visit)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

void enumerate_qvectors(size_t arity, long max_height,
                        const std::function<bool(const QVector&)>& visit) {
  if (arity == 0 || max_height < 1) return;
  FractionTable table = build_table(max_height);
  std::vector<size_t> ranks(arity, 0);
  for (long h = 1; h <= max_height; ++h) {
    size_t lo = h == 1 ? 0 : table.count_le[h - 1];
    size_t hi = table.count_le[h];
    if (!emit_layer(table, ranks, 0, arity, lo, hi, true, visit)) return;
  }
}

CoverageReport density_witness(const AdditiveMap& f, const Window& window,
                               int cells, long height) {
  if (!(window.x1 > window.x0) || !(window.y1 > window.y0)) {
    throw InvalidWindow("density: window must have positive area");
  }
  if (cells < 1 || height < 1) {
    throw Error("density: cells and height must be >= 1");
  }
  const HamelBasisSpec& basis = f.basis();

  // Period direction for x-reduction: a zero-assigned symbol translates
  // embed(v) by integer multiples of its embedding without changing f(v).
  // Pick the smallest |embedding| among them for the tightest reduction.
  std::optional<double> period;
  for (size_t i = 0; i < basis.size(); ++i) {
    if (!f.assignment(i).is_zero()) continue;
    double p = std::fabs(basis.symbol(i).embedding);
    if (!period || p < *period) period = p;
  }

  const int m = cells;
  const double wx = window.x1 - window.x0;
  const double wy = window.y1 - window.y0;
  std::vector<char> covered(static_cast<size_t>(m) * m, 0);
  CoverageReport report;
  report.cells = m;
  report.height = height;
  long hit = 0;

  enumerate_qvectors(basis.size(), height, [&](const QVector& v) {
    ++report.enumerated;
    double x = embed(basis, v);
    double y = evaluate(f, v).to_double();
    if (period) {
      x -= std::floor((x - window.x0) / *period) * *period;
    }
    if (x < window.x0 || x > window.x1 || y < window.y0 || y > window.y1) {
      return true;
    }
    int i = std::min(m - 1, static_cast<int>((x - window.x0) / wx * m));
    int j = std::min(m - 1, static_cast<int>((y - window.y0) / wy * m));
    size_t cell = static_cast<size_t>(i) * m + j;
    if (!covered[cell]) {
      covered[cell] = 1;
      report.representatives.push_back({x, y, i, j});
      if (++hit == static_cast<long>(m) * m) return false;  // saturated
    }
    return true;
  });

  report.coverage = static_cast<double>(hit) / (static_cast<double>(m) * m);
  return report;
}

}  // namespace additive::hamel
