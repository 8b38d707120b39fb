#include "additive/sample_table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "additive/errors.hpp"

namespace additive {

namespace {

constexpr double kCoordTolerance = 1e-9;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    size_t a = field.find_first_not_of(" \t\r");
    size_t b = field.find_last_not_of(" \t\r");
    fields.push_back(a == std::string::npos ? ""
                                            : field.substr(a, b - a + 1));
  }
  return fields;
}

double parse_double(const std::string& token, const std::string& where) {
  try {
    size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError(where + ": bad number \"" + token + "\"");
  }
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

SampleTable SampleTable::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("csv: cannot open \"" + path + "\"");
  return parse_csv(in, path);
}

SampleTable SampleTable::parse_csv(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(origin + ": empty file");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header.back() != "value") {
    throw ParseError(origin + ": header must be x1,...,xn,value");
  }
  const int n = static_cast<int>(header.size()) - 1;
  for (int k = 0; k < n; ++k) {
    if (header[k] != "x" + std::to_string(k + 1)) {
      throw ParseError(origin + ": header column " + std::to_string(k + 1) +
                       " must be x" + std::to_string(k + 1));
    }
  }

  SampleTable table;
  table.dimension_ = n;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split_csv_line(line);
    std::string where = origin + ":" + std::to_string(line_no);
    if (static_cast<int>(fields.size()) != n + 1) {
      throw ParseError(where + ": expected " + std::to_string(n + 1) +
                       " fields, got " + std::to_string(fields.size()));
    }
    Row row;
    row.coords.reserve(n);
    for (int k = 0; k < n; ++k) {
      row.coords.push_back(parse_double(fields[k], where));
    }
    row.value = parse_double(fields[n], where);
    table.rows_.push_back(std::move(row));
  }
  std::sort(table.rows_.begin(), table.rows_.end(),
            [](const Row& a, const Row& b) { return lex_less(a.coords, b.coords); });
  return table;
}

const SampleTable::Row* SampleTable::find(const Point& p) const {
  if (p.dimension() != dimension_) return nullptr;
  // Find the first row whose coords could match within tolerance, then
  // scan the tolerance band.
  std::vector<double> low = p.coords;
  for (double& c : low) c -= kCoordTolerance;
  auto it = std::lower_bound(
      rows_.begin(), rows_.end(), low,
      [](const Row& r, const std::vector<double>& key) {
        return lex_less(r.coords, key);
      });
  for (; it != rows_.end(); ++it) {
    if (it->coords[0] > p.coords[0] + kCoordTolerance) break;
    bool match = true;
    for (int k = 0; k < dimension_; ++k) {
      if (std::fabs(it->coords[k] - p.coords[k]) > kCoordTolerance) {
        match = false;
        break;
      }
    }
    if (match) return &*it;
  }
  return nullptr;
}

RealOracle SampleTable::oracle(Domain domain) const {
  auto self = std::make_shared<SampleTable>(*this);
  return RealOracle{domain, dimension_, [self](const Point& p) {
                      const Row* row = self->find(p);
                      if (!row) {
                        throw OracleFailure(
                            "sample table: no row within 1e-9 of " +
                            to_string(p));
                      }
                      return row->value;
                    }};
}

void SampleTable::validate_grid(const Parallelepiped& I,
                                const GridSpec& grid) const {
  if (I.dimension() != dimension_) {
    throw DimensionMismatch("sample table: dimension " +
                            std::to_string(dimension_) +
                            " does not match domain dimension " +
                            std::to_string(I.dimension()));
  }
  const int n = I.dimension();
  std::vector<int> idx(n, 0);
  for (;;) {
    Point node = I.base();
    for (int k = 0; k < n; ++k) {
      double frac = (idx[k] + 0.5) / grid.resolution[k];
      for (int c = 0; c < n; ++c) node[c] += frac * I.generators()[k][c];
    }
    if (!find(node)) {
      throw ParseError("sample table: missing midpoint node " +
                       to_string(node));
    }
    int axis = n - 1;
    while (axis >= 0 && ++idx[axis] == grid.resolution[axis]) {
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
}

torus::ValuesTable load_torus_values_csv(const std::string& path, int q,
                                         int dimension) {
  std::ifstream in(path);
  if (!in) throw ParseError("csv: cannot open \"" + path + "\"");
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  auto header = split_csv_line(line);
  if (static_cast<int>(header.size()) != dimension + 1 ||
      header.back() != "value") {
    throw ParseError(path + ": header must be x1,...,x" +
                     std::to_string(dimension) + ",value");
  }
  std::vector<std::pair<std::vector<Rational>, double>> entries;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split_csv_line(line);
    std::string where = path + ":" + std::to_string(line_no);
    if (static_cast<int>(fields.size()) != dimension + 1) {
      throw ParseError(where + ": expected " + std::to_string(dimension + 1) +
                       " fields");
    }
    std::vector<Rational> coords;
    coords.reserve(dimension);
    for (int k = 0; k < dimension; ++k) {
      try {
        coords.push_back(Rational::from_string(fields[k]));
      } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
    entries.emplace_back(std::move(coords), parse_double(fields[dimension], where));
  }
  return torus::ValuesTable::from_entries(q, dimension, entries);
}

}  // namespace additive
