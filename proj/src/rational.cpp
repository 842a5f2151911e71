#include "dstoch/rational.hpp"

#include <ostream>
#include <stdexcept>

#include "dstoch/error.hpp"

namespace dstoch {

Rational::Rational(long num, long den) {
  if (den == 0) {
    fail("ParseError", "zero denominator");
  }
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    Rational r;
    if (slash == std::string::npos) {
      r.v_ = mpq_class(mpz_class(text));
    } else {
      mpz_class num(text.substr(0, slash));
      mpz_class den(text.substr(slash + 1));
      if (den == 0) {
        fail("ParseError", "zero denominator in \"" + text + "\"");
      }
      r.v_ = mpq_class(num, den);
      r.v_.canonicalize();
    }
    return r;
  } catch (const std::invalid_argument&) {
    fail("ParseError", "not a rational: \"" + text + "\"");
  }
}

Rational Rational::abs() const {
  Rational r = *this;
  if (sgn(r.v_) < 0) {
    r.v_ = -r.v_;
  }
  return r;
}

void Rational::add_mul(const Rational& a, const Rational& b) {
  static thread_local mpq_class scratch;
  mpq_mul(scratch.get_mpq_t(), a.v_.get_mpq_t(), b.v_.get_mpq_t());
  mpq_add(v_.get_mpq_t(), v_.get_mpq_t(), scratch.get_mpq_t());
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) {
    fail("ParseError", "division by zero");
  }
  v_ /= o.v_;
  return *this;
}

std::string Rational::str() const {
  if (is_integer()) {
    return v_.get_num().get_str();
  }
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace dstoch
