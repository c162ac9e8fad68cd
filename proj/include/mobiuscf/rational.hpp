#pragma once

#include <string>

#include "mobiuscf/errors.hpp"
#include "mobiuscf/integer.hpp"

namespace mcf {

// Always kept normalized: den > 0, gcd(num, den) = 1.
struct Rational {
  Integer num{0};
  Integer den{1};

  Rational() = default;
  Rational(Integer n) : num(std::move(n)) {}  // NOLINT: implicit from Integer is wanted
  Rational(long n) : num(n) {}                // NOLINT
  Rational(Integer n, Integer d) : num(std::move(n)), den(std::move(d)) { normalize(); }

  void normalize() {
    if (den == 0) throw PoleError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    Integer g = gcd(abs(num), den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_integer() const { return den == 1; }
  Integer floor() const { return floor_div(num, den); }

  std::string str() const { return den == 1 ? num.str() : num.str() + "/" + den.str(); }

  friend Rational operator+(const Rational& x, const Rational& y) {
    return Rational(x.num * y.den + y.num * x.den, x.den * y.den);
  }
  friend Rational operator-(const Rational& x, const Rational& y) {
    return Rational(x.num * y.den - y.num * x.den, x.den * y.den);
  }
  friend Rational operator*(const Rational& x, const Rational& y) {
    return Rational(x.num * y.num, x.den * y.den);
  }
  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num == 0) throw PoleError("division by zero rational");
    return Rational(x.num * y.den, x.den * y.num);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num = -r.num;
    return r;
  }

  friend bool operator==(const Rational& x, const Rational& y) { return x.num == y.num && x.den == y.den; }
  friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
  friend bool operator<(const Rational& x, const Rational& y) { return x.num * y.den < y.num * x.den; }
  friend bool operator<=(const Rational& x, const Rational& y) { return x == y || x < y; }
};

}  // namespace mcf
