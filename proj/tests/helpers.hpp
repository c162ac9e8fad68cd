#pragma once

#include <random>
#include <vector>

#include "mobiuscf/mobiuscf.hpp"

// Shared test utilities: seeded randomness and an independent digit oracle
// for quadratic irrationals, so the streaming transform can be checked
// against something that is not itself.

namespace tst {

using mcf::CFClass;
using mcf::CoeffExpr;
using mcf::Integer;
using mcf::Mat2;
using mcf::QuasiPeriodicCF;
using mcf::QuotientStream;
using mcf::Rational;

using Rng = std::mt19937_64;

inline long rnd(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Mat2 rnd_mat(Rng& rng, long lo, long hi) {
  return {rnd(rng, lo, hi), rnd(rng, lo, hi), rnd(rng, lo, hi), rnd(rng, lo, hi)};
}

// Rejection sample until |det| hits the target.
inline Mat2 rnd_mat_det(Rng& rng, long lo, long hi, const Integer& abs_det) {
  for (;;) {
    Mat2 s = rnd_mat(rng, lo, hi);
    Integer d = mat_det(s);
    if (d == abs_det || d == -abs_det) return s;
  }
}

// Unimodular matrix as a short product of R/L powers and maybe J.
inline Mat2 rnd_word_mat(Rng& rng, bool allow_j = true, int factors = 4, long max_exp = 9) {
  Mat2 m = mcf::kI;
  for (int i = 0; i < factors; ++i) {
    int pick = static_cast<int>(rnd(rng, 0, allow_j ? 2 : 1));
    if (pick == 2)
      m = m * mcf::kJ;
    else
      m = m * mcf::rl_pow(pick == 0 ? 'R' : 'L', rnd(rng, 1, max_exp));
  }
  return m;
}

// Random expression tree; pow keeps a small constant exponent so values stay sane.
inline CoeffExpr rnd_expr(Rng& rng, int depth) {
  if (depth == 0 || rnd(rng, 0, 2) == 0)
    return rnd(rng, 0, 1) ? CoeffExpr::var_k() : CoeffExpr::lit(rnd(rng, -20, 20));
  switch (rnd(rng, 0, 4)) {
    case 0: return CoeffExpr::add(rnd_expr(rng, depth - 1), rnd_expr(rng, depth - 1));
    case 1: return CoeffExpr::sub(rnd_expr(rng, depth - 1), rnd_expr(rng, depth - 1));
    case 2: return CoeffExpr::mul(rnd_expr(rng, depth - 1), rnd_expr(rng, depth - 1));
    case 3: return CoeffExpr::div(rnd_expr(rng, depth - 1), CoeffExpr::lit(rnd(rng, 1, 6)));
    default: return CoeffExpr::pow(rnd_expr(rng, depth - 1), CoeffExpr::lit(rnd(rng, 0, 3)));
  }
}

// Grammar-random quasi-periodic CF. Finite ones are normalized the way the
// parser would print them (start 0, nonempty prefix).
inline QuasiPeriodicCF rnd_cf(Rng& rng) {
  QuasiPeriodicCF cf;
  long np = rnd(rng, 0, 3);
  for (long i = 0; i < np; ++i) cf.prefix.emplace_back(rnd(rng, i == 0 ? -9 : 1, 9));
  long s = rnd(rng, 0, 2);
  for (long i = 0; i < s; ++i) cf.period.push_back(rnd_expr(rng, 2));
  cf.start = cf.finite() ? 0 : rnd(rng, 0, 5);
  if (cf.finite() && cf.prefix.empty()) cf.prefix.emplace_back(1);
  return cf;
}

// Quasi-periodic input with affine entries c*k + o whose parities follow the
// requested class. Two entries per period keep every position's parity a
// function of its slot alone.
inline QuasiPeriodicCF rnd_affine_family(Rng& rng, CFClass cls) {
  auto entry = [&](bool want_odd) {
    long c = 2 * rnd(rng, 1, 4);
    long o = rnd(rng, 1, 12);
    if ((o % 2 != 0) != want_odd) ++o;
    return CoeffExpr::add(CoeffExpr::mul(CoeffExpr::lit(c), CoeffExpr::var_k()),
                          CoeffExpr::lit(o));
  };
  bool even_slot_odd;  // parity of entries at even positions
  bool odd_slot_odd;
  switch (cls) {
    case CFClass::CF1: even_slot_odd = false; odd_slot_odd = false; break;
    case CFClass::CF2: even_slot_odd = true; odd_slot_odd = true; break;
    case CFClass::CF3: even_slot_odd = true; odd_slot_odd = false; break;
    default: even_slot_odd = false; odd_slot_odd = true; break;
  }
  QuasiPeriodicCF x;
  x.period = {entry(even_slot_odd), entry(odd_slot_odd)};
  x.start = 1;
  return x;
}

// x = (P + U sqrt(D)) / Q with D positive and not a square, U and Q nonzero.
// Digits come from exact integer floors, one at a time; this is a different
// algorithm from the streaming transform, so the two can vouch for each other.
struct Surd {
  Integer P, U, Q, D;

  void reduce() {
    using boost::multiprecision::gcd;
    Integer g = gcd(gcd(abs(P), abs(U)), abs(Q));
    if (g > 1) { P /= g; U /= g; Q /= g; }
    if (Q < 0) { P = -P; U = -U; Q = -Q; }
  }

  Integer floor_root_part() const {
    using boost::multiprecision::sqrt;
    Integer s = sqrt(Integer(U * U * D));
    return U >= 0 ? s : -s - 1;
  }

  Integer next_digit() {
    Integer a = mcf::floor_div(P + floor_root_part(), Q);
    Integer p1 = P - a * Q;
    Integer np = Q * p1, nu = -Q * U, nq = p1 * p1 - U * U * D;
    P = np; U = nu; Q = nq;
    reduce();
    return a;
  }
};

inline Surd make_surd(const Integer& p, const Integer& u, const Integer& q, const Integer& d) {
  Surd s{p, u, q, d};
  s.reduce();
  return s;
}

inline QuotientStream surd_stream(Surd s) {
  auto held = std::make_shared<Surd>(std::move(s));
  return QuotientStream([held]() { return std::optional<Integer>(held->next_digit()); });
}

// Image of a surd under an integer map with nonzero determinant.
inline Surd surd_image(const Mat2& m, const Surd& x) {
  Integer pn = m.a * x.P + m.b * x.Q, un = m.a * x.U;
  Integer pd = m.c * x.P + m.d * x.Q, ud = m.c * x.U;
  Surd r;
  r.D = x.D;
  r.P = pn * pd - un * ud * x.D;
  r.U = un * pd - pn * ud;
  r.Q = pd * pd - ud * ud * x.D;
  r.reduce();
  return r;
}

inline bool is_square(const Integer& n) {
  if (n < 0) return false;
  Integer s = boost::multiprecision::sqrt(n);
  return s * s == n;
}

}  // namespace tst
