#include "additive/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>

#include "additive/errors.hpp"

namespace additive {

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw ParseError("rational: denominator must be positive, got 0");
  mpq_init(q_);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  mpq_set_si(q_, num, static_cast<unsigned long>(den));
  mpq_canonicalize(q_);
}

Rational Rational::from_string(std::string_view text) {
  std::string_view num_part = text;
  std::string_view den_part = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num_part = text.substr(0, slash);
    den_part = text.substr(slash + 1);
  }
  if (!is_integer_token(num_part) || !is_integer_token(den_part)) {
    throw ParseError("rational: expected \"p/q\" or integer, got \"" +
                     std::string(text) + "\"");
  }
  Rational r;
  if (mpz_set_str(mpq_numref(r.q_), std::string(num_part).c_str(), 10) != 0 ||
      mpz_set_str(mpq_denref(r.q_), std::string(den_part).c_str(), 10) != 0) {
    throw ParseError("rational: expected \"p/q\" or integer, got \"" +
                     std::string(text) + "\"");
  }
  if (mpz_sgn(mpq_denref(r.q_)) <= 0) {
    throw ParseError("rational \"" + std::string(text) +
                     "\": denominator must be positive");
  }
  mpq_canonicalize(r.q_);
  return r;
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) {
    throw ParseError("rational: cannot convert non-finite double");
  }
  Rational r;
  mpq_set_d(r.q_, x);  // exact: binary64 values are dyadic rationals
  return r;
}

Rational Rational::floor() const {
  Rational r;
  mpz_fdiv_q(mpq_numref(r.q_), mpq_numref(q_), mpq_denref(q_));
  return r;
}

Rational Rational::mod1() const { return *this - floor(); }

long Rational::height() const {
  mpz_t a;
  mpz_init(a);
  mpz_abs(a, mpq_numref(q_));
  long h;
  if (mpz_cmp(a, mpq_denref(q_)) >= 0) {
    h = mpz_fits_slong_p(a) ? mpz_get_si(a) : std::numeric_limits<long>::max();
  } else {
    h = mpz_fits_slong_p(mpq_denref(q_)) ? mpz_get_si(mpq_denref(q_))
                                         : std::numeric_limits<long>::max();
  }
  mpz_clear(a);
  return h;
}

std::string Rational::str() const {
  return numerator_str() + "/" + denominator_str();
}

namespace {
std::string mpz_to_string(const mpz_t z) {
  size_t n = mpz_sizeinbase(z, 10) + 2;
  std::string buf(n, '\0');
  mpz_get_str(buf.data(), 10, z);
  buf.resize(buf.find('\0'));
  return buf;
}
}  // namespace

std::string Rational::numerator_str() const {
  return mpz_to_string(mpq_numref(q_));
}

std::string Rational::denominator_str() const {
  return mpz_to_string(mpq_denref(q_));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw ParseError("rational: division by zero");
  Rational r;
  mpq_div(r.q_, a.q_, b.q_);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace additive
