#pragma once

#include <utility>
#include <vector>

#include "mobiuscf/decompose.hpp"
#include "mobiuscf/errors.hpp"
#include "mobiuscf/expr.hpp"
#include "mobiuscf/gosper.hpp"
#include "mobiuscf/integer.hpp"
#include "mobiuscf/matrix.hpp"
#include "mobiuscf/qpcf.hpp"
#include "mobiuscf/rational.hpp"
#include "mobiuscf/report.hpp"
#include "mobiuscf/stream.hpp"
#include "mobiuscf/tails.hpp"

// Two classical quasi-periodic families and their closed-form tails.
//
// hurwitz_cf(a, n)      [a(1+kn)]_{k>=0}        arithmetic quotients
// tasoev1_cf(u, a)      [u a^k]_{k>=1}          geometric quotients
// tasoev2_cf(u, v, a)   [u a^k, v a^k]_{k>=1}   alternating geometric
//
// For each family and each tail shape the image under a determinant -2 map
// has a tail we can write down directly; *_tail builds that closed form so
// it can be checked against predicted_tail and against the streamed digits.

namespace mcf {

inline QuasiPeriodicCF hurwitz_cf(const Integer& a, const Integer& n) {
  if (a < 1 || n < 1) throw std::invalid_argument("hurwitz_cf: parameters must be positive");
  CoeffExpr term = CoeffExpr::mul(
      CoeffExpr::lit(a),
      CoeffExpr::add(CoeffExpr::lit(1), CoeffExpr::mul(CoeffExpr::lit(n), CoeffExpr::var_k())));
  QuasiPeriodicCF x;
  x.period = {term};
  x.start = 0;
  return x;
}

inline QuasiPeriodicCF tasoev1_cf(const Integer& u, const Integer& a) {
  if (u < 1 || a < 1) throw std::invalid_argument("tasoev1_cf: parameters must be positive");
  QuasiPeriodicCF x;
  x.period = {CoeffExpr::mul(CoeffExpr::lit(u), CoeffExpr::pow(CoeffExpr::lit(a), CoeffExpr::var_k()))};
  x.start = 1;
  return x;
}

inline QuasiPeriodicCF tasoev2_cf(const Integer& u, const Integer& v, const Integer& a) {
  if (u < 1 || v < 1 || a < 1) throw std::invalid_argument("tasoev2_cf: parameters must be positive");
  QuasiPeriodicCF x;
  x.period = {CoeffExpr::mul(CoeffExpr::lit(u), CoeffExpr::pow(CoeffExpr::lit(a), CoeffExpr::var_k())),
              CoeffExpr::mul(CoeffExpr::lit(v), CoeffExpr::pow(CoeffExpr::lit(a), CoeffExpr::var_k()))};
  x.start = 1;
  return x;
}

inline CFClass hurwitz_class(const Integer& a, const Integer& n) {
  if (is_even(a)) return CFClass::CF1;
  if (is_even(n)) return CFClass::CF2;
  return CFClass::CF3;
}

inline CFClass tasoev1_class(const Integer& u, const Integer& a) {
  return (is_even(u) || is_even(a)) ? CFClass::CF1 : CFClass::CF2;
}

inline CFClass tasoev2_class(const Integer& u, const Integer& v, const Integer& a) {
  if (is_even(a)) return CFClass::CF1;
  if (is_odd(u)) return is_odd(v) ? CFClass::CF2 : CFClass::CF3;
  return is_odd(v) ? CFClass::CF4 : CFClass::CF1;
}

namespace detail {

// c*k + o as an expression, lightly simplified for display.
inline CoeffExpr k_lin(long c, long o) {
  CoeffExpr e = c == 1 ? CoeffExpr::var_k()
                       : CoeffExpr::mul(CoeffExpr::lit(c), CoeffExpr::var_k());
  if (o > 0) e = CoeffExpr::add(e, CoeffExpr::lit(o));
  if (o < 0) e = CoeffExpr::sub(e, CoeffExpr::lit(-o));
  return e;
}

inline CoeffExpr half(const CoeffExpr& x) { return CoeffExpr::div(x, CoeffExpr::lit(2)); }
inline CoeffExpr half_m1(const CoeffExpr& x) {
  return CoeffExpr::div(CoeffExpr::sub(x, CoeffExpr::lit(1)), CoeffExpr::lit(2));
}
inline CoeffExpr half_m2(const CoeffExpr& x) {
  return CoeffExpr::div(CoeffExpr::sub(x, CoeffExpr::lit(2)), CoeffExpr::lit(2));
}
inline CoeffExpr twice(const CoeffExpr& x) { return CoeffExpr::mul(CoeffExpr::lit(2), x); }
inline CoeffExpr one() { return CoeffExpr::lit(1); }

inline void family_tail_guard(const char* who, CFClass have, TailLabel label, const Integer& k0) {
  if (k0 < 1) throw std::invalid_argument(std::string(who) + ": anchor must be >= 1");
  if (tail_label_class(label) != have)
    throw ClassMismatch(std::string(who) + ": " + tail_label_name(label) + " needs class " +
                        cf_class_name(tail_label_class(label)) + ", family is " + cf_class_name(have));
}

// Size conditions: every entry of the closed tail must stay >= 1 from the
// anchor on, or the written-down expansion is not a continued fraction at all.
inline QuasiPeriodicCF sized(const char* who, QuasiPeriodicCF t) {
  if (!applicable(t))
    throw NotApplicable(std::string(who) + ": an entry drops below 1 at this anchor");
  return t;
}

}  // namespace detail

// Tail of sigma(h(a, n)) written directly in k, anchored at k0.  The entries
// do not depend on the anchor; validity from a given k0 is a size question,
// enforced on return (first_applicable_k0 finds a workable anchor).
inline QuasiPeriodicCF hurwitz_tail(const Integer& a, const Integer& n, TailLabel label,
                                    const Integer& k0 = 1) {
  using namespace detail;
  family_tail_guard("hurwitz_tail", hurwitz_class(a, n), label, k0);
  // the alternating class is only tabulated for parameters odd and above 3
  if (tail_label_class(label) == CFClass::CF3 && (a < 5 || n < 5))
    throw NotApplicable("hurwitz_tail: the alternating case needs a, n >= 5");
  // digit at position i of h(a, n) is a(1 + i n)
  auto H = [&](long c, long o) {
    return CoeffExpr::mul(
        CoeffExpr::lit(a),
        CoeffExpr::add(CoeffExpr::lit(1), CoeffExpr::mul(CoeffExpr::lit(n), k_lin(c, o))));
  };
  QuasiPeriodicCF t;
  t.start = k0;
  switch (label) {
    case TailLabel::T1_1:
      t.period = {half_m2(H(1, -1)), one(), one()};
      break;
    case TailLabel::T1_2:
      t.period = {half(H(2, -2)), twice(H(2, -1))};
      break;
    case TailLabel::T1_3:
      t.period = {half(H(2, -1)), twice(H(2, 0))};
      break;
    case TailLabel::T2_1:
      t.period = {half_m1(H(3, -3)), twice(H(3, -2)), half_m1(H(3, -1)), one(), one()};
      break;
    case TailLabel::T2_2:
      t.period = {half_m1(H(3, -2)), twice(H(3, -1)), half_m1(H(3, 0)), one(), one()};
      break;
    case TailLabel::T2_3:
      t.period = {half_m1(H(3, -1)), twice(H(3, 0)), half_m1(H(3, 1)), one(), one()};
      break;
    case TailLabel::T3_1:
      t.period = {half_m1(H(4, -4)), twice(H(4, -3)), half_m1(H(4, -2)), one(), one(),
                  half_m2(H(4, -1)), one(), one()};
      break;
    case TailLabel::T3_2:
      t.period = {half_m1(H(4, -2)), twice(H(4, -1)), half_m1(H(4, 0)), one(), one(),
                  half_m2(H(4, 1)), one(), one()};
      break;
    case TailLabel::T3_3:
      t.period = {half(H(2, -1)), twice(H(2, 0))};
      break;
    default:
      // class guard already rejects the T4 row
      throw ClassMismatch("hurwitz_tail: no closed form for this label");
  }
  return sized("hurwitz_tail", std::move(t));
}

inline QuasiPeriodicCF tasoev1_tail(const Integer& u, const Integer& a, TailLabel label,
                                    const Integer& k0 = 1) {
  using namespace detail;
  family_tail_guard("tasoev1_tail", tasoev1_class(u, a), label, k0);
  // digit at position i of t1(u, a) is u a^(i+1)
  auto T = [&](long c, long o) {
    return CoeffExpr::mul(CoeffExpr::lit(u), CoeffExpr::pow(CoeffExpr::lit(a), k_lin(c, o)));
  };
  QuasiPeriodicCF t;
  t.start = k0;
  switch (label) {
    case TailLabel::T1_1:
      t.period = {half_m2(T(1, 0)), one(), one()};
      break;
    case TailLabel::T1_2:
      t.period = {half(T(2, -1)), twice(T(2, 0))};
      break;
    case TailLabel::T1_3:
      t.period = {half(T(2, 0)), twice(T(2, 1))};
      break;
    case TailLabel::T2_1:
      t.period = {half_m1(T(3, -2)), twice(T(3, -1)), half_m1(T(3, 0)), one(), one()};
      break;
    case TailLabel::T2_2:
      t.period = {half_m1(T(3, -1)), twice(T(3, 0)), half_m1(T(3, 1)), one(), one()};
      break;
    case TailLabel::T2_3:
      t.period = {half_m1(T(3, 0)), twice(T(3, 1)), half_m1(T(3, 2)), one(), one()};
      break;
    default:
      throw ClassMismatch("tasoev1_tail: no closed form for this label");
  }
  return sized("tasoev1_tail", std::move(t));
}

// For the two-parameter family the one-block-per-k shapes (stride 1 and 3)
// cover two input blocks per symbolic step, and the entry constants absorb
// the anchor; the closed forms below are the k0 = 1 ones.  The even-stride
// shapes are anchor independent.
inline QuasiPeriodicCF tasoev2_tail(const Integer& u, const Integer& v, const Integer& a,
                                    TailLabel label, const Integer& k0 = 1) {
  using namespace detail;
  family_tail_guard("tasoev2_tail", tasoev2_class(u, v, a), label, k0);
  // digits at positions 2m, 2m+1 of t2(u, v, a) are u a^(m+1), v a^(m+1)
  auto U = [&](long c, long o) {
    return CoeffExpr::mul(CoeffExpr::lit(u), CoeffExpr::pow(CoeffExpr::lit(a), k_lin(c, o)));
  };
  auto V = [&](long c, long o) {
    return CoeffExpr::mul(CoeffExpr::lit(v), CoeffExpr::pow(CoeffExpr::lit(a), k_lin(c, o)));
  };
  bool doubled = label == TailLabel::T1_1 || label == TailLabel::T2_1 ||
                 label == TailLabel::T2_2 || label == TailLabel::T2_3;
  if (doubled && k0 != 1)
    throw NotApplicable(std::string("tasoev2_tail: closed form for ") + tail_label_name(label) +
                        " is anchored at k = 1");
  QuasiPeriodicCF t;
  t.start = k0;
  switch (label) {
    case TailLabel::T1_1:
      t.period = {half_m2(U(1, 0)), one(), one(), half_m2(V(1, 0)), one(), one()};
      break;
    case TailLabel::T1_2:
      t.period = {half(U(1, 0)), twice(V(1, 0))};
      break;
    case TailLabel::T1_3:
      t.period = {half(V(1, 0)), twice(U(1, 1))};
      break;
    case TailLabel::T2_1:
      t.period = {half_m1(U(3, -2)), twice(V(3, -2)), half_m1(U(3, -1)), one(), one(),
                  half_m1(V(3, -1)), twice(U(3, 0)), half_m1(V(3, 0)), one(), one()};
      break;
    case TailLabel::T2_2:
      t.period = {half_m1(V(3, -2)), twice(U(3, -1)), half_m1(V(3, -1)), one(), one(),
                  half_m1(U(3, 0)), twice(V(3, 0)), half_m1(U(3, 1)), one(), one()};
      break;
    case TailLabel::T2_3:
      t.period = {half_m1(U(3, -1)), twice(V(3, -1)), half_m1(U(3, 0)), one(), one(),
                  half_m1(V(3, 0)), twice(U(3, 1)), half_m1(V(3, 1)), one(), one()};
      break;
    case TailLabel::T3_1:
      t.period = {half_m1(U(2, -1)), twice(V(2, -1)), half_m1(U(2, 0)), one(), one(),
                  half_m2(V(2, 0)), one(), one()};
      break;
    case TailLabel::T3_2:
      t.period = {half_m1(U(2, 0)), twice(V(2, 0)), half_m1(U(2, 1)), one(), one(),
                  half_m2(V(2, 1)), one(), one()};
      break;
    case TailLabel::T3_3:
      t.period = {half(V(1, 0)), twice(U(1, 1))};
      break;
    case TailLabel::T4_1:
      t.period = {half_m1(V(2, -1)), twice(U(2, 0)), half_m1(V(2, 0)), one(), one(),
                  half_m2(U(2, 1)), one(), one()};
      break;
    case TailLabel::T4_2:
      t.period = {half(U(1, 0)), twice(V(1, 0))};
      break;
    case TailLabel::T4_3:
      t.period = {half_m1(V(2, 0)), twice(U(2, 1)), half_m1(V(2, 1)), one(), one(),
                  half_m2(U(2, 2)), one(), one()};
      break;
  }
  return sized("tasoev2_tail", std::move(t));
}

namespace detail {
// product of (k n + 1) for k in [lo, hi]; empty range gives 1
inline Integer kn1_prod(const Integer& n, long lo, long hi) {
  Integer r = 1;
  for (long k = lo; k <= hi; ++k) r *= Integer(k) * n + 1;
  return r;
}
}  // namespace detail

// Unreduced numerator and denominator of the p-th convergent of h(a, n),
// summed in closed form rather than recursively.
inline std::pair<Integer, Integer> hurwitz_convergent_closed(const Integer& a, const Integer& n,
                                                             long p) {
  if (p < 0) throw IndexOutOfRange("hurwitz_convergent_closed: p must be >= 0");
  Integer num = 0, den = 0;
  for (long i = 0; 2 * i <= p + 1; ++i) {
    num += ipow(a, static_cast<unsigned long>(p - 2 * i + 1)) *
           binomial(Integer(p - i + 1), Integer(i)) * detail::kn1_prod(n, i, p - i);
  }
  for (long i = 0; 2 * i <= p; ++i) {
    den += ipow(a, static_cast<unsigned long>(p - 2 * i)) * binomial(Integer(p - i), Integer(i)) *
           detail::kn1_prod(n, i + 1, p - i);
  }
  return {num, den};
}

// Unreduced numerator and denominator of sigma applied to that convergent.
inline std::pair<Integer, Integer> hurwitz_image_closed(const Mat2& sigma, const Integer& a,
                                                        const Integer& n, long p) {
  if (p < 0) throw IndexOutOfRange("hurwitz_image_closed: p must be >= 0");
  Integer delta = (p % 2 == 1) ? 1 : 0;
  Integer num = 0, den = 0;
  for (long i = 0; 2 * i <= p; ++i) {
    Integer common = ipow(a, static_cast<unsigned long>(p - 2 * i)) *
                     detail::kn1_prod(n, i + 1, p - i);
    Integer heavy = a * (Integer(i) * n + 1) * binomial(Integer(p - i + 1), Integer(i));
    Integer light = binomial(Integer(p - i), Integer(i));
    num += common * (sigma.a * heavy + sigma.b * light);
    den += common * (sigma.c * heavy + sigma.d * light);
  }
  num += sigma.a * delta;
  den += sigma.c * delta;
  return {num, den};
}

// The M image of h(a, n) for even a >= 4 collapses to [1; a n k / 2 + (a(1-n)-2)/2, 1, 1].
inline QuasiPeriodicCF komatsu_expansion(const Integer& a, const Integer& n) {
  if (is_odd(a) || a < 4)
    throw NotApplicable("komatsu_expansion: needs even a >= 4");
  if (n < 1) throw std::invalid_argument("komatsu_expansion: n must be positive");
  Integer alpha = a * n / 2;
  Integer beta = (a * (1 - n) - 2) / 2;
  CoeffExpr lin = CoeffExpr::mul(CoeffExpr::lit(alpha), CoeffExpr::var_k());
  lin = beta >= 0 ? CoeffExpr::add(lin, CoeffExpr::lit(beta))
                  : CoeffExpr::sub(lin, CoeffExpr::lit(-beta));
  QuasiPeriodicCF t;
  t.prefix = {Integer(1)};
  t.period = {lin, CoeffExpr::lit(1), CoeffExpr::lit(1)};
  t.start = 1;
  return t;
}

// Checks the collapsed expansion digit by digit and the three-step leap
// U_{3p}/V_{3p} = B_{p-1} through p = pmax, with B from the closed form.
inline VerificationReport komatsu_special_check(const Integer& a, const Integer& n,
                                                long pmax = 20) {
  QuasiPeriodicCF predicted = komatsu_expansion(a, n);
  QuasiPeriodicCF x = hurwitz_cf(a, n);
  ReplayStream out(apply_lft_stream(kM, qp_stream(x)));
  ConvergentTable uv(out);

  VerificationReport rep;
  rep.branch = "komatsu";
  rep.lo = 1;
  rep.hi = pmax;
  if (out.require(0) != 1) {
    rep.failures.push_back({0, to_string(out.require(0)), "1"});
    return rep;
  }
  std::vector<Integer> want = qp_evaluate(predicted, 1 + 3 * static_cast<std::size_t>(pmax));
  for (long p = 1; p <= pmax; ++p) {
    bool good = true;
    for (long t = 3 * (p - 1) + 1; t <= 3 * p; ++t) {
      std::size_t i = static_cast<std::size_t>(t);
      if (out.require(i) != want[i]) {
        rep.failures.push_back({Integer(t), to_string(out.require(i)), to_string(want[i])});
        good = false;
      }
    }
    auto [bn, bd] = hurwitz_image_closed(kM, a, n, p - 1);
    Rational lhs = uv.at(static_cast<std::size_t>(3 * p)).value();
    if (lhs != Rational(bn, bd)) {
      rep.failures.push_back({Integer(p), lhs.str(), Rational(bn, bd).str()});
      good = false;
    }
    if (good) ++rep.passes;
  }
  return rep;
}

}  // namespace mcf
