#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mobiuscf/errors.hpp"
#include "mobiuscf/integer.hpp"
#include "mobiuscf/rational.hpp"

namespace mcf {

// Row-major [[a, b], [c, d]], acting on x as (a x + b) / (c x + d).
struct Mat2 {
  Integer a, b, c, d;

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }

  std::string str() const {
    return "[[" + a.str() + "," + b.str() + "],[" + c.str() + "," + d.str() + "]]";
  }
};

inline Integer mat_det(const Mat2& m) { return m.a * m.d - m.b * m.c; }

inline const Mat2 kI{1, 0, 0, 1};
inline const Mat2 kR{1, 1, 0, 1};
inline const Mat2 kL{1, 0, 1, 1};
inline const Mat2 kM{1, 1, 1, -1};
inline const Mat2 kJ{0, 1, 1, 0};
inline const Mat2 kAuxA{0, 2, 1, 0};
inline const Mat2 kAuxB{0, 1, 2, 0};
inline const Mat2 kAuxC{0, 2, 1, 1};

inline Mat2 mat_pow(Mat2 m, unsigned long e) {
  Mat2 r = kI;
  while (e) {
    if (e & 1) r = r * m;
    m = m * m;
    e >>= 1;
  }
  return r;
}

// Powers of the two shears have closed forms valid for any integer exponent.
inline Mat2 rl_pow(char letter, const Integer& h) {
  if (letter == 'R') return {1, h, 0, 1};
  if (letter == 'L') return {1, 0, h, 1};
  throw std::invalid_argument("rl_pow: letter must be 'R' or 'L'");
}

struct RLPower {
  char letter;  // 'R' or 'L'
  Integer exp;
};
using RLWord = std::vector<RLPower>;

// Appends one factor, merging with the last when the letter repeats.
inline void word_append(RLWord& w, char letter, const Integer& exp) {
  if (exp == 0) return;
  if (!w.empty() && w.back().letter == letter)
    w.back().exp += exp;
  else
    w.push_back({letter, exp});
}

inline void word_append(RLWord& w, const RLWord& suffix) {
  for (const auto& f : suffix) word_append(w, f.letter, f.exp);
}

// pre: exponents nonnegative
inline Mat2 rl_word_to_matrix(const RLWord& w) {
  Mat2 m = kI;
  for (const auto& f : w) {
    if (f.exp < 0) throw std::invalid_argument("rl_word_to_matrix: negative exponent");
    m = m * rl_pow(f.letter, f.exp);
  }
  return m;
}

// Reads an alternating word as partial quotients (R exponent first; a leading
// L factor yields a zero first quotient).
inline std::vector<Integer> word_to_digits(const RLWord& w) {
  std::vector<Integer> out;
  char expect = 'R';
  for (const auto& f : w) {
    if (f.letter != expect) {
      if (out.empty() && f.letter == 'L') {
        out.push_back(0);
        expect = 'L';
      } else {
        throw std::invalid_argument("word_to_digits: word does not alternate");
      }
    }
    out.push_back(f.exp);
    expect = (expect == 'R') ? 'L' : 'R';
  }
  return out;
}

inline RLWord digits_to_word(const std::vector<Integer>& digits) {
  RLWord w;
  char letter = 'R';
  for (const auto& q : digits) {
    word_append(w, letter, q);
    letter = (letter == 'R') ? 'L' : 'R';
  }
  return w;
}

// LFTs are |det| != 0 matrices applied to rationals.
using Lft = Mat2;

inline std::pair<Integer, Integer> lft_apply_raw(const Lft& s, const Integer& num, const Integer& den) {
  return {s.a * num + s.b * den, s.c * num + s.d * den};
}

inline Rational lft_apply(const Lft& s, const Rational& x) {
  if (mat_det(s) == 0) throw std::invalid_argument("lft_apply: singular matrix");
  auto [n, d] = lft_apply_raw(s, x.num, x.den);
  if (d == 0) throw PoleError("lft_apply: input is a pole of the map");
  return Rational(n, d);
}

}  // namespace mcf
