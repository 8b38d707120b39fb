#include "additive/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "additive/errors.hpp"

namespace additive {

struct Expression::Node {
  std::function<double(std::span<const double>)> fn;
};

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  using Fn = std::function<double(std::span<const double>)>;

  Fn parse(int& max_var) {
    max_var_ = 0;
    Fn e = expression();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError("expression: unexpected input at position " +
                       std::to_string(pos_) + ": \"" +
                       std::string(text_.substr(pos_)) + "\"");
    }
    max_var = max_var_;
    return e;
  }

 private:
  Fn expression() {
    Fn left = term();
    for (;;) {
      skip_ws();
      if (consume('+')) {
        Fn right = term();
        left = [left, right](std::span<const double> x) {
          return left(x) + right(x);
        };
      } else if (consume('-')) {
        Fn right = term();
        left = [left, right](std::span<const double> x) {
          return left(x) - right(x);
        };
      } else {
        return left;
      }
    }
  }

  Fn term() {
    Fn left = unary();
    for (;;) {
      skip_ws();
      if (consume('*')) {
        Fn right = unary();
        left = [left, right](std::span<const double> x) {
          return left(x) * right(x);
        };
      } else if (consume('/')) {
        Fn right = unary();
        left = [left, right](std::span<const double> x) {
          return left(x) / right(x);
        };
      } else {
        return left;
      }
    }
  }

  Fn unary() {
    skip_ws();
    if (consume('-')) {
      Fn inner = unary();
      return [inner](std::span<const double> x) { return -inner(x); };
    }
    if (consume('+')) return unary();
    return power();
  }

  Fn power() {
    Fn base = atom();
    skip_ws();
    if (!consume('^')) return base;
    skip_ws();
    bool negative = consume('-');
    if (pos_ >= text_.size() || !std::isdigit(uc(text_[pos_]))) {
      throw ParseError("expression: integer exponent expected after '^'");
    }
    long exponent = 0;
    while (pos_ < text_.size() && std::isdigit(uc(text_[pos_]))) {
      exponent = exponent * 10 + (text_[pos_++] - '0');
    }
    if (negative) exponent = -exponent;
    return [base, exponent](std::span<const double> x) {
      return std::pow(base(x), static_cast<double>(exponent));
    };
  }

  Fn atom() {
    skip_ws();
    if (pos_ >= text_.size()) {
      throw ParseError("expression: unexpected end of input");
    }
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Fn inner = expression();
      skip_ws();
      if (!consume(')')) throw ParseError("expression: missing ')'");
      return inner;
    }
    if (std::isdigit(uc(c)) || c == '.') return number();
    if (std::isalpha(uc(c))) return identifier();
    throw ParseError(std::string("expression: unexpected character '") + c +
                     "'");
  }

  Fn number() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(uc(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > start &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    std::string token(text_.substr(start, pos_ - start));
    size_t used = 0;
    double value;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      throw ParseError("expression: bad number \"" + token + "\"");
    }
    if (used != token.size()) {
      throw ParseError("expression: bad number \"" + token + "\"");
    }
    return [value](std::span<const double>) { return value; };
  }

  Fn identifier() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(uc(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    if (name == "pi") {
      return [](std::span<const double>) { return std::numbers::pi; };
    }
    if (name == "x") name = "x1";
    if (name.size() >= 2 && name[0] == 'x' &&
        std::isdigit(uc(name[1]))) {
      int index = 0;
      for (size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(uc(name[i]))) {
          throw ParseError("expression: bad variable \"" + name + "\"");
        }
        index = index * 10 + (name[i] - '0');
      }
      if (index < 1) throw ParseError("expression: variables start at x1");
      max_var_ = std::max(max_var_, index);
      size_t slot = static_cast<size_t>(index - 1);
      return [slot](std::span<const double> x) {
        return slot < x.size() ? x[slot] : 0.0;
      };
    }
    static const struct {
      const char* name;
      double (*fn)(double);
    } kFunctions[] = {{"sin", std::sin}, {"cos", std::cos}, {"exp", std::exp},
                      {"abs", std::fabs}, {"sqrt", std::sqrt}};
    for (const auto& f : kFunctions) {
      if (name == f.name) {
        skip_ws();
        if (!consume('(')) {
          throw ParseError("expression: '(' expected after " + name);
        }
        Fn inner = expression();
        skip_ws();
        if (!consume(')')) throw ParseError("expression: missing ')'");
        auto fn = f.fn;
        return [fn, inner](std::span<const double> x) { return fn(inner(x)); };
      }
    }
    throw ParseError("expression: unknown identifier \"" + name + "\"");
  }

  static unsigned char uc(char c) { return static_cast<unsigned char>(c); }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(uc(text_[pos_]))) ++pos_;
  }
  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int max_var_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  Parser parser(text);
  int max_var = 0;
  auto fn = parser.parse(max_var);
  Expression e;
  e.root_ = std::make_shared<Node>(Node{std::move(fn)});
  e.min_dimension_ = std::max(1, max_var);
  e.source_ = std::string(text);
  return e;
}

double Expression::eval(std::span<const double> x) const {
  return root_->fn(x);
}

RealOracle Expression::oracle(int dimension, Domain domain) const {
  if (dimension < min_dimension_) {
    throw DimensionMismatch("expression \"" + source_ + "\" references x" +
                            std::to_string(min_dimension_) +
                            " but dimension is " + std::to_string(dimension));
  }
  auto root = root_;
  return RealOracle{domain, dimension, [root](const Point& p) {
                      return root->fn(p.coords);
                    }};
}

}  // namespace additive
