// additive-lab: construct additive functions over finite Hamel-style bases,
// classify sampled functions as linear or nonlinear, check torus
// homomorphism candidates, and validate regularity functionals.
//
// All results are JSON on stdout. Exit codes: 0 success / verdict-positive,
// 1 verdict-negative (nonlinear, inconclusive, witness, axiom failure),
// 2 input error, 3 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "additive/errors.hpp"
#include "additive/estimator.hpp"
#include "additive/expr.hpp"
#include "additive/framework.hpp"
#include "additive/hamel.hpp"
#include "additive/hamel_json.hpp"
#include "additive/quadrature.hpp"
#include "additive/sample_table.hpp"
#include "additive/torus.hpp"

using nlohmann::ordered_json;
using namespace additive;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr uint64_t kDefaultSeed = 1729;

uint64_t seed_from_env() {
  if (const char* env = std::getenv("ADDITIVE_LAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError("ADDITIVE_LAB_SEED must be an unsigned integer");
    }
  }
  return kDefaultSeed;
}

ordered_json make_payload(const std::string& command) {
  ordered_json payload;
  payload["command"] = command;
  payload["version"] = kVersion;
  return payload;
}

void emit(const ordered_json& payload) { std::cout << payload.dump(2) << "\n"; }

ordered_json complex_json(const Complex& z) {
  return ordered_json::array({z.real(), z.imag()});
}

double parse_scale(const std::string& text) {
  if (text.empty()) throw ParseError("scale: empty");
  if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
    std::string prefix = text.substr(0, text.size() - 2);
    if (prefix.empty()) return std::numbers::pi;
    if (prefix == "-") return -std::numbers::pi;
    try {
      return std::stod(prefix) * std::numbers::pi;
    } catch (const std::exception&) {
      throw ParseError("scale: bad multiplier \"" + text + "\"");
    }
  }
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw ParseError("scale: bad value \"" + text + "\"");
  }
}

hamel::QVector random_qvector(std::mt19937_64& rng, size_t arity, long height) {
  std::uniform_int_distribution<long> num(-height, height);
  std::uniform_int_distribution<long> den(1, height);
  hamel::QVector v;
  for (size_t k = 0; k < arity; ++k) {
    v.set(k, Rational(num(rng), den(rng)));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Function sources shared by classify / mean-value / exp-integral

struct FunctionSource {
  std::string expr;
  std::string hamel_path;
  std::string csv_path;
  std::string scale_text = "1";
  std::string axis_label;

  void attach(CLI::App* cmd) {
    cmd->add_option("--expr", expr, "expression, e.g. \"3*x\" or \"sin(2*pi*x1)\"");
    cmd->add_option("--hamel", hamel_path, "additive map JSON spec");
    cmd->add_option("--csv", csv_path, "grid samples: header x1,...,xn,value");
    cmd->add_option("--scale", scale_text,
                    "real factor for hamel oracles (accepts e.g. \"2pi\")");
    cmd->add_option("--axis", axis_label,
                    "basis symbol interpreted as the sampling axis");
  }

  int count_sources() const {
    return (expr.empty() ? 0 : 1) + (hamel_path.empty() ? 0 : 1) +
           (csv_path.empty() ? 0 : 1);
  }
};

struct DomainFlags {
  std::vector<double> interval;  // a b
  std::vector<double> box;       // a1 b1 a2 b2 ...
  int grid_nodes = 0;            // 0 = module default

  void attach(CLI::App* cmd) {
    cmd->add_option("--interval", interval, "1-D domain: a b")->expected(2);
    cmd->add_option("--box", box, "axis-aligned box: a1 b1 a2 b2 ...");
    cmd->add_option("--grid", grid_nodes, "midpoint nodes per axis");
  }

  Parallelepiped domain(int dimension) const {
    if (!interval.empty() && !box.empty()) {
      throw ParseError("give either --interval or --box, not both");
    }
    if (!interval.empty()) {
      if (dimension != 1) {
        throw ParseError("--interval is for 1-D functions; use --box");
      }
      return Parallelepiped::interval(interval[0], interval[1]);
    }
    if (!box.empty()) {
      if (static_cast<int>(box.size()) != 2 * dimension) {
        throw ParseError("--box needs 2*n values for dimension " +
                         std::to_string(dimension));
      }
      Point base = Point::zeros(dimension);
      std::vector<Point> gens;
      for (int k = 0; k < dimension; ++k) {
        base[k] = box[2 * k];
        Point u = Point::zeros(dimension);
        u[k] = box[2 * k + 1] - box[2 * k];
        gens.push_back(u);
      }
      return Parallelepiped(base, gens);
    }
    return dimension == 1 ? Parallelepiped::interval(0.0, 1.0)
                          : Parallelepiped::unit_box(dimension);
  }

  GridSpec grid(int dimension) const {
    return grid_nodes > 0 ? GridSpec::uniform(dimension, grid_nodes)
                          : estimator::default_grid(dimension);
  }
};

struct LoadedFunction {
  estimator::AnalyzedFunction fn;
  int dimension = 1;
  std::optional<hamel::AdditiveMap> map;  // set for hamel sources
  std::optional<SampleTable> table;       // set for csv sources
};

LoadedFunction load_function(const FunctionSource& source, int dim_override) {
  if (source.count_sources() != 1) {
    throw ParseError("exactly one of --expr, --hamel, --csv is required");
  }
  LoadedFunction out;
  if (!source.expr.empty()) {
    Expression e = Expression::parse(source.expr);
    out.dimension = std::max(e.min_dimension(), std::max(1, dim_override));
    out.fn = estimator::AnalyzedFunction(e.oracle(out.dimension));
  } else if (!source.hamel_path.empty()) {
    out.map = hamel::load_additive_map(source.hamel_path);
    size_t axis = 0;
    if (!source.axis_label.empty()) {
      auto idx = out.map->basis().index_of(source.axis_label);
      if (!idx) {
        throw ParseError("axis \"" + source.axis_label + "\" is not a basis label");
      }
      axis = *idx;
    }
    out.dimension = 1;
    out.fn = estimator::hamel_oracle(*out.map, axis, parse_scale(source.scale_text));
  } else {
    out.table = SampleTable::load_csv(source.csv_path);
    out.dimension = out.table->dimension();
    out.fn = estimator::AnalyzedFunction(out.table->oracle());
  }
  return out;
}

std::vector<estimator::Probe> build_probes(
    const LoadedFunction& f, const Parallelepiped& domain,
    const std::string& probes_flag, const std::vector<std::string>& probe_list,
    uint64_t seed) {
  std::vector<estimator::Probe> probes;
  for (const std::string& text : probe_list) {
    Point p = Point::zeros(f.dimension);
    std::istringstream is(text);
    std::string tok;
    int k = 0;
    while (std::getline(is, tok, ',')) {
      if (k >= f.dimension) throw ParseError("probe \"" + text + "\": too many coordinates");
      try {
        p[k++] = std::stod(tok);
      } catch (const std::exception&) {
        throw ParseError("probe \"" + text + "\": bad number \"" + tok + "\"");
      }
    }
    if (k != f.dimension) throw ParseError("probe \"" + text + "\": expected " +
                                           std::to_string(f.dimension) + " coordinates");
    probes.push_back(estimator::Probe::at(p));
  }
  if (probes_flag != "auto" && !probes_flag.empty()) {
    throw ParseError("--probes accepts \"auto\" (use --probe for explicit points)");
  }
  if (!probes.empty()) return probes;

  std::mt19937_64 rng(seed);
  if (f.map) {
    // From the basis: each e_i, each e_i/7, then random height-bounded
    // vectors. The 1/7 probes keep the lattice refutation reachable.
    const auto& basis = f.map->basis();
    for (size_t i = 0; i < basis.size(); ++i) {
      probes.push_back(estimator::Probe::of(hamel::QVector::unit(i), basis));
    }
    for (size_t i = 0; i < basis.size(); ++i) {
      probes.push_back(estimator::Probe::of(
          Rational(1, 7) * hamel::QVector::unit(i), basis));
    }
    for (int i = 0; i < 8; ++i) {
      probes.push_back(estimator::Probe::of(
          random_qvector(rng, basis.size(), 100), basis));
    }
    return probes;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 16; ++i) {
    Point p = domain.base();
    for (int k = 0; k < domain.dimension(); ++k) {
      double t = unit(rng);
      for (int c = 0; c < domain.dimension(); ++c) {
        p[c] += t * domain.generators()[k][c];
      }
    }
    probes.push_back(estimator::Probe::at(p));
  }
  return probes;
}

ordered_json diagnostics_json(const estimator::Diagnostics& diag) {
  ordered_json d = ordered_json::object();
  if (diag.alpha) {
    d["alpha"] = diag.alpha->str();
    d["alpha_integral"] = complex_json(diag.alpha_integral);
  }
  if (diag.additivity) {
    d["additivity_spot_check"] = {{"pairs", diag.additivity->pairs},
                                  {"max_defect", diag.additivity->max_defect},
                                  {"tolerance", diag.additivity->tolerance},
                                  {"passed", diag.additivity->passed}};
  }
  if (!diag.notes.empty()) d["notes"] = diag.notes;
  return d;
}

int render_verdict(ordered_json& payload, const estimator::LinearityVerdict& verdict) {
  if (verdict.is_linear()) {
    payload["verdict"] = {{"verdict", "linear"},
                          {"c", verdict.linear().coefficients}};
  } else if (verdict.is_nonlinear()) {
    const auto& w = verdict.witness();
    ordered_json wj;
    wj["point"] = w.probe.location.coords;
    if (w.probe.exact) wj["qvector"] = w.probe.exact->str();
    wj["alpha"] = w.alpha.str();
    wj["phase"] = complex_json(w.phase);
    wj["residual"] = w.residual;
    payload["verdict"] = {{"verdict", "nonlinear"}, {"witness", wj}};
  } else {
    payload["verdict"] = {{"verdict", "inconclusive"},
                          {"reason", verdict.inconclusive().reason}};
  }
  payload["diagnostics"] = diagnostics_json(verdict.diagnostics);
  return verdict.is_linear() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_construct(const std::string& path, const std::string& out_path,
                  uint64_t seed) {
  ordered_json payload = make_payload("construct");
  hamel::AdditiveMap map = hamel::load_additive_map(path);

  std::mt19937_64 rng(seed);
  std::vector<std::pair<hamel::QVector, hamel::QVector>> pairs;
  for (int i = 0; i < 64; ++i) {
    pairs.emplace_back(random_qvector(rng, map.basis().size(), 100),
                       random_qvector(rng, map.basis().size(), 100));
  }
  hamel::AdditivityReport report = hamel::check_additive(map, pairs);

  payload["value"] = hamel::additive_map_to_json(map);
  payload["diagnostics"] = {{"self_test", report.passed ? "pass" : "fail"},
                            {"pairs_checked", report.pairs_checked}};
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write \"" + out_path + "\"");
    out << hamel::canonical_json_text(map);
  }
  emit(payload);
  return report.passed ? 0 : 3;  // failure would mean a broken evaluator
}

int cmd_classify(const FunctionSource& source, const DomainFlags& domain_flags,
                 int dim_override, int max_den, double tau,
                 const std::string& probes_flag,
                 const std::vector<std::string>& probe_list, uint64_t seed) {
  ordered_json payload = make_payload("classify");
  LoadedFunction f = load_function(source, dim_override);
  Parallelepiped domain = domain_flags.domain(f.dimension);
  GridSpec grid = domain_flags.grid(f.dimension);
  if (f.table) f.table->validate_grid(domain, grid);

  auto probes = build_probes(f, domain, probes_flag, probe_list, seed);
  estimator::AlphaSearchPolicy policy(max_den, tau);
  auto verdict = estimator::classify(f.fn, domain, grid, policy, probes);
  int rc = render_verdict(payload, verdict);
  emit(payload);
  return rc;
}

int cmd_classify_vec(const std::vector<std::string>& exprs,
                     const DomainFlags& domain_flags, int dim_override,
                     int max_den, double tau,
                     const std::vector<std::string>& probe_list,
                     uint64_t seed) {
  ordered_json payload = make_payload("classify-vec");
  if (exprs.empty()) throw ParseError("--expr required at least once");

  int dimension = std::max(1, dim_override);
  std::vector<Expression> parsed;
  for (const auto& text : exprs) {
    parsed.push_back(Expression::parse(text));
    dimension = std::max(dimension, parsed.back().min_dimension());
  }
  std::vector<estimator::AnalyzedFunction> components;
  for (const auto& e : parsed) {
    components.emplace_back(e.oracle(dimension));
  }
  Parallelepiped domain = domain_flags.domain(dimension);
  GridSpec grid = domain_flags.grid(dimension);
  LoadedFunction fake;
  fake.dimension = dimension;
  auto probes = build_probes(fake, domain, "auto", probe_list, seed);
  estimator::AlphaSearchPolicy policy(max_den, tau);

  auto verdict = estimator::classify_vector_valued(components, domain, grid,
                                                   policy, probes);
  if (verdict.is_linear()) {
    payload["verdict"] = {{"verdict", "linear"}, {"matrix", *verdict.matrix}};
    payload["diagnostics"] = ordered_json::object();
    emit(payload);
    return 0;
  }
  ordered_json inner;
  int rc = render_verdict(inner, *verdict.failure);
  payload["verdict"] = {{"verdict", "component-failure"},
                        {"component", *verdict.failed_component},
                        {"detail", inner["verdict"]}};
  payload["diagnostics"] = inner["diagnostics"];
  emit(payload);
  return rc;
}

int cmd_density(const std::string& hamel_path,
                const std::vector<double>& window_vals, int cells, long height,
                const std::string& out_path) {
  ordered_json payload = make_payload("density");
  hamel::AdditiveMap map = hamel::load_additive_map(hamel_path);
  hamel::Window window{window_vals[0], window_vals[1], window_vals[2],
                       window_vals[3]};
  auto report = hamel::density_witness(map, window, cells, height);

  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot write \"" + out_path + "\"");
  out << "x,y,cell_i,cell_j\n";
  out.precision(17);
  for (const auto& p : report.representatives) {
    out << p.x << "," << p.y << "," << p.cell_i << "," << p.cell_j << "\n";
  }

  payload["value"] = {{"coverage", report.coverage},
                      {"covered_cells", report.representatives.size()},
                      {"cells", report.cells},
                      {"height", report.height},
                      {"points_csv", out_path}};
  payload["diagnostics"] = {{"enumerated", report.enumerated}};
  emit(payload);
  return 0;
}

std::vector<torus::TorusPoint> parse_torus_probes(
    const std::vector<std::string>& probe_list, int dimension) {
  std::vector<torus::TorusPoint> probes;
  for (const auto& text : probe_list) {
    std::vector<Rational> coords;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      coords.push_back(Rational::from_string(tok));
    }
    if (static_cast<int>(coords.size()) != dimension) {
      throw ParseError("torus probe \"" + text + "\": expected " +
                       std::to_string(dimension) + " coordinates");
    }
    probes.emplace_back(std::move(coords));
  }
  if (probes.empty()) {
    for (const auto& [num, den] :
         {std::pair{1L, 2L}, {1L, 3L}, {2L, 3L}, {1L, 4L}, {3L, 4L}, {1L, 7L}}) {
      std::vector<Rational> coords(dimension, Rational(num, den));
      probes.emplace_back(std::move(coords));
    }
  }
  return probes;
}

int cmd_torus_check(const std::string& values_path, int q, int dimension,
                    const std::string& expr, int grid_nodes, int max_den,
                    double tau, const std::vector<std::string>& probe_list) {
  ordered_json payload = make_payload("torus-check");
  if (!values_path.empty() && !expr.empty()) {
    throw ParseError("give either --values (torsion check) or --expr (classify)");
  }
  if (!values_path.empty()) {
    if (q < 1) throw ParseError("--q must be >= 1");
    auto table = load_torus_values_csv(values_path, q, dimension);
    auto verdict = torus::torsion_vanishing(table);
    switch (verdict.kind) {
      case torus::TorsionVerdict::Kind::zero:
        payload["verdict"] = {{"verdict", "zero"}};
        break;
      case torus::TorsionVerdict::Kind::additivity_violation:
        payload["verdict"] = {{"verdict", "additivity-violation"},
                              {"x", verdict.x->str()},
                              {"y", verdict.y->str()},
                              {"defect", verdict.defect}};
        break;
      case torus::TorsionVerdict::Kind::nonzero_value:
        payload["verdict"] = {{"verdict", "nonzero-value"},
                              {"x", verdict.x->str()},
                              {"value", verdict.value}};
        break;
    }
    payload["diagnostics"] = {{"q", q}, {"dimension", dimension},
                              {"points", table.group().order()}};
    emit(payload);
    return verdict.is_zero() ? 0 : 1;
  }
  if (expr.empty()) throw ParseError("one of --values or --expr is required");

  Expression e = Expression::parse(expr);
  int n = std::max(dimension, e.min_dimension());
  GridSpec grid = grid_nodes > 0 ? GridSpec::uniform(n, grid_nodes)
                                 : estimator::default_grid(n);
  estimator::AlphaSearchPolicy policy(max_den, tau);
  auto probes = parse_torus_probes(probe_list, n);
  auto verdict = torus::torus_classify(e.oracle(n, Domain::torus), grid,
                                       policy, probes);
  if (verdict.zero) {
    payload["verdict"] = {{"verdict", "zero"}};
  } else if (verdict.witness) {
    payload["verdict"] = {{"verdict", "witness"},
                          {"kind", verdict.witness->kind},
                          {"probe", verdict.witness->probe.str()},
                          {"alpha", verdict.witness->alpha.str()},
                          {"phase", complex_json(verdict.witness->phase)},
                          {"residual", verdict.witness->residual}};
  } else {
    payload["verdict"] = {{"verdict", "witness"}, {"kind", "no-alpha"}};
  }
  ordered_json d = ordered_json::object();
  if (verdict.alpha) d["alpha"] = verdict.alpha->str();
  if (!verdict.notes.empty()) d["notes"] = verdict.notes;
  payload["diagnostics"] = d;
  emit(payload);
  return verdict.zero ? 0 : 1;
}

int cmd_axioms(const std::string& functional_name,
               const std::vector<double>& interval, int grid_nodes,
               int max_den, double tau, uint64_t seed) {
  ordered_json payload = make_payload("axioms");
  double a = interval.size() == 2 ? interval[0] : 0.0;
  double b = interval.size() == 2 ? interval[1] : 1.0;
  Parallelepiped I = Parallelepiped::interval(a, b);
  GridSpec grid = GridSpec::uniform(1, grid_nodes > 0 ? grid_nodes : 4096);
  estimator::AlphaSearchPolicy policy(max_den, tau);

  framework::RegularityFunctional F;
  if (functional_name == "integral") {
    F = framework::integral_functional(I, grid, policy);
  } else if (functional_name == "point-eval") {
    F = framework::point_evaluation_functional(I.base(), I.generators(), policy);
  } else if (functional_name == "zero") {
    F = framework::zero_functional(I.generators(), policy);
  } else {
    throw ParseError("unknown functional \"" + functional_name +
                     "\" (expected integral, point-eval, zero)");
  }

  auto family = framework::default_family(1, seed);
  auto report = framework::check_axioms(F, family);

  ordered_json entries = ordered_json::array();
  for (const auto& entry : report.entries) {
    ordered_json ej = {{"axiom", std::string(1, entry.axiom)},
                       {"passed", entry.passed}};
    if (!entry.passed) ej["witness"] = entry.witness;
    entries.push_back(ej);
  }
  payload["verdict"] = {{"functional", F.label},
                        {"axioms", entries},
                        {"all_passed", report.all_passed()}};
  payload["diagnostics"] = {{"family_members", family.members.size()}};
  emit(payload);
  return report.all_passed() ? 0 : 1;
}

int cmd_mean_value(const FunctionSource& source, const DomainFlags& domain_flags,
                   int dim_override, const std::vector<double>& y_coords) {
  ordered_json payload = make_payload("mean-value");
  LoadedFunction f = load_function(source, dim_override);
  Parallelepiped domain = domain_flags.domain(f.dimension);
  GridSpec grid = domain_flags.grid(f.dimension);
  if (f.table) f.table->validate_grid(domain, grid);
  if (static_cast<int>(y_coords.size()) != f.dimension) {
    throw ParseError("--y needs " + std::to_string(f.dimension) + " coordinates");
  }
  double value = estimator::mean_value_estimate(f.fn.real, domain,
                                                Point(y_coords), grid);
  payload["value"] = value;
  payload["diagnostics"] = ordered_json::object();
  emit(payload);
  return 0;
}

int cmd_exp_integral(const FunctionSource& source, const DomainFlags& domain_flags,
                     int dim_override, const std::string& alpha_text) {
  ordered_json payload = make_payload("exp-integral");
  LoadedFunction f = load_function(source, dim_override);
  Parallelepiped domain = domain_flags.domain(f.dimension);
  GridSpec grid = domain_flags.grid(f.dimension);
  if (f.table) f.table->validate_grid(domain, grid);
  Rational alpha = Rational::from_string(alpha_text);
  Complex value = estimator::exp_integral(f.fn.real, domain, alpha, grid);
  payload["value"] = complex_json(value);
  payload["diagnostics"] = {{"modulus", std::abs(value)},
                            {"alpha", alpha.str()}};
  emit(payload);
  return 0;
}

ordered_json error_payload(const std::string& command, const std::string& kind,
                           const std::string& message) {
  ordered_json payload = make_payload(command);
  payload["verdict"] = {{"verdict", "error"}, {"kind", kind}};
  payload["diagnostics"] = {{"message", message}};
  return payload;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"additive-lab: Cauchy functional equation laboratory"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "validate and canonicalize an additive map spec");
  std::string construct_path, construct_out;
  construct->add_option("spec", construct_path, "hamel JSON path")->required();
  construct->add_option("--out", construct_out, "write canonical JSON here");

  // classify
  auto* classify = app.add_subcommand("classify", "classify a function as linear or nonlinear");
  FunctionSource classify_source;
  DomainFlags classify_domain;
  classify_source.attach(classify);
  classify_domain.attach(classify);
  int classify_dim = 0, classify_max_den = 32;
  double classify_tau = 0.1;
  std::string classify_probes = "auto";
  std::vector<std::string> classify_probe_list;
  classify->add_option("--dim", classify_dim, "dimension override");
  classify->add_option("--max-den", classify_max_den, "Farey search depth D");
  classify->add_option("--tau", classify_tau, "alpha acceptance fraction");
  classify->add_option("--probes", classify_probes, "\"auto\" (default)");
  classify->add_option("--probe", classify_probe_list, "explicit probe \"x[,y,...]\"");

  // classify-vec
  auto* classify_vec = app.add_subcommand("classify-vec", "componentwise classification of R^n -> R^m");
  std::vector<std::string> vec_exprs;
  DomainFlags vec_domain;
  vec_domain.attach(classify_vec);
  int vec_dim = 0, vec_max_den = 32;
  double vec_tau = 0.1;
  std::vector<std::string> vec_probe_list;
  classify_vec->add_option("--expr", vec_exprs, "component expression (repeat m times)");
  classify_vec->add_option("--dim", vec_dim, "dimension override");
  classify_vec->add_option("--max-den", vec_max_den, "Farey search depth D");
  classify_vec->add_option("--tau", vec_tau, "alpha acceptance fraction");
  classify_vec->add_option("--probe", vec_probe_list, "explicit probe \"x[,y,...]\"");

  // density
  auto* density = app.add_subcommand("density", "graph-density witness of a wild additive map");
  std::string density_hamel, density_out = "density_points.csv";
  std::vector<double> density_window;
  int density_cells = 10;
  long density_height = 50;
  density->add_option("--hamel", density_hamel, "additive map JSON spec")->required();
  density->add_option("--window", density_window, "x0 x1 y0 y1")->expected(4)->required();
  density->add_option("--cells", density_cells, "cells per window side (M)");
  density->add_option("--height", density_height, "coordinate height bound (H)");
  density->add_option("--out", density_out, "representative points CSV path");

  // torus-check
  auto* torus_check = app.add_subcommand("torus-check", "torsion table check / torus homomorphism classify");
  std::string torus_values, torus_expr;
  int torus_q = 0, torus_dim = 1, torus_grid = 0, torus_max_den = 32;
  double torus_tau = 0.1;
  std::vector<std::string> torus_probe_list;
  torus_check->add_option("--values", torus_values, "CSV of grid values (torsion mode)");
  torus_check->add_option("--q", torus_q, "grid subgroup denominator");
  torus_check->add_option("--dim", torus_dim, "torus dimension");
  torus_check->add_option("--expr", torus_expr, "function lift (classify mode)");
  torus_check->add_option("--grid", torus_grid, "midpoint nodes per axis");
  torus_check->add_option("--max-den", torus_max_den, "alpha = 1/m search depth");
  torus_check->add_option("--tau", torus_tau, "alpha acceptance fraction");
  torus_check->add_option("--probe", torus_probe_list, "torus probe \"p/q[,p/q...]\"");

  // axioms
  auto* axioms = app.add_subcommand("axioms", "check regularity functional axioms (a)-(e)");
  std::string axioms_functional;
  std::vector<double> axioms_interval;
  int axioms_grid = 0, axioms_max_den = 32;
  double axioms_tau = 0.1;
  axioms->add_option("--functional", axioms_functional, "integral | point-eval | zero")->required();
  axioms->add_option("--interval", axioms_interval, "a b")->expected(2);
  axioms->add_option("--grid", axioms_grid, "midpoint nodes");
  axioms->add_option("--max-den", axioms_max_den, "Farey search depth D");
  axioms->add_option("--tau", axioms_tau, "alpha acceptance fraction");

  // mean-value
  auto* mean_value = app.add_subcommand("mean-value", "mean-value estimate of g(y)");
  FunctionSource mv_source;
  DomainFlags mv_domain;
  mv_source.attach(mean_value);
  mv_domain.attach(mean_value);
  int mv_dim = 0;
  std::vector<double> mv_y;
  mean_value->add_option("--dim", mv_dim, "dimension override");
  mean_value->add_option("--y", mv_y, "shift point coordinates")->required();

  // exp-integral
  auto* exp_integral = app.add_subcommand("exp-integral", "integral of e^{i alpha g} over the domain");
  FunctionSource ei_source;
  DomainFlags ei_domain;
  ei_source.attach(exp_integral);
  ei_domain.attach(exp_integral);
  int ei_dim = 0;
  std::string ei_alpha = "1/1";
  exp_integral->add_option("--dim", ei_dim, "dimension override");
  exp_integral->add_option("--alpha", ei_alpha, "rational alpha \"p/q\"");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      return app.exit(e);
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    uint64_t seed = seed_from_env();
    if (construct->parsed()) {
      return cmd_construct(construct_path, construct_out, seed);
    }
    if (classify->parsed()) {
      return cmd_classify(classify_source, classify_domain, classify_dim,
                          classify_max_den, classify_tau, classify_probes,
                          classify_probe_list, seed);
    }
    if (classify_vec->parsed()) {
      return cmd_classify_vec(vec_exprs, vec_domain, vec_dim, vec_max_den,
                              vec_tau, vec_probe_list, seed);
    }
    if (density->parsed()) {
      return cmd_density(density_hamel, density_window, density_cells,
                         density_height, density_out);
    }
    if (torus_check->parsed()) {
      return cmd_torus_check(torus_values, torus_q, torus_dim, torus_expr,
                             torus_grid, torus_max_den, torus_tau,
                             torus_probe_list);
    }
    if (axioms->parsed()) {
      return cmd_axioms(axioms_functional, axioms_interval, axioms_grid,
                        axioms_max_den, axioms_tau, seed);
    }
    if (mean_value->parsed()) {
      return cmd_mean_value(mv_source, mv_domain, mv_dim, mv_y);
    }
    if (exp_integral->parsed()) {
      return cmd_exp_integral(ei_source, ei_domain, ei_dim, ei_alpha);
    }
    std::cerr << "no command\n";
    return 2;
  } catch (const ParseError& e) {
    emit(error_payload(command, "input", e.what()));
    return 2;
  } catch (const IncompleteData& e) {
    emit(error_payload(command, "input", e.what()));
    return 2;
  } catch (const UnknownSymbol& e) {
    emit(error_payload(command, "input", e.what()));
    return 2;
  } catch (const InvalidWindow& e) {
    emit(error_payload(command, "input", e.what()));
    return 2;
  } catch (const DimensionMismatch& e) {
    emit(error_payload(command, "input", e.what()));
    return 2;
  } catch (const nlohmann::json::exception& e) {
    emit(error_payload(command, "input", e.what()));
    return 2;
  } catch (const std::exception& e) {
    emit(error_payload(command, "internal", e.what()));
    return 3;
  }
}
