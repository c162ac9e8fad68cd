#pragma once

#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "mobiuscf/decompose.hpp"
#include "mobiuscf/errors.hpp"
#include "mobiuscf/gosper.hpp"
#include "mobiuscf/qpcf.hpp"
#include "mobiuscf/report.hpp"
#include "mobiuscf/tails.hpp"

namespace mcf {

// How output convergents leap onto transformed input convergents: every
// third one, five per three input steps, eight per four, or only up to a
// searched index shift (the rows with no usable recurrence).
enum class LeapKind { Stride3, FiveInThree, EightInFour, ShiftSearch };

inline LeapKind leap_kind(TailLabel t) {
  switch (t) {
    case TailLabel::T1_1: return LeapKind::Stride3;
    case TailLabel::T2_1:
    case TailLabel::T2_2:
    case TailLabel::T2_3: return LeapKind::FiveInThree;
    case TailLabel::T3_1:
    case TailLabel::T3_2:
    case TailLabel::T4_1:
    case TailLabel::T4_3: return LeapKind::EightInFour;
    default: return LeapKind::ShiftSearch;
  }
}

// Everything needed to compare output convergents U_p/V_p against transformed
// input convergents: the aligned tail anchor k0 and the output position p0
// just before the periodic part begins.
struct LeapingContext {
  Mat2 sigma;
  DecompCase kase;
  CFClass cls;
  TailLabel label;
  QuasiPeriodicCF input;
  QuasiPeriodicCF tail;
  Integer k0{1};
  Integer p0{0};
  std::size_t tail_start_pos = 0;
  ReplayStream out_digits;
  ReplayStream in_digits;
  ConvergentTable uv;
  ConvergentTable pq;

  Integer in_digit(const Integer& i) { return in_digits.require(static_cast<std::size_t>(i)); }
};

inline LeapingContext make_context(const Mat2& sigma, const QuasiPeriodicCF& x,
                                   std::size_t horizon = 400) {
  LeapingContext ctx;
  ctx.sigma = sigma;
  Integer det = mat_det(sigma);
  if (det != 2 && det != -2)
    throw NotApplicable("make_context: determinant is " + det.str() +
                        ", the tail machinery needs +-2");
  ctx.kase = decompose(sigma).kase;
  ctx.cls = classify(x);
  if (ctx.cls == CFClass::Unknown)
    throw ClassMismatch("make_context: input quotients fit no parity class");
  ctx.label = tail_label(ctx.cls, ctx.kase);
  auto k0 = first_applicable_k0(x, ctx.label);
  if (!k0)
    throw NotApplicable(std::string(tail_label_name(ctx.label)) +
                        ": size conditions fail at every anchor");
  ctx.input = x;
  ctx.tail = predicted_tail(x, ctx.label, *k0);
  ctx.out_digits = ReplayStream(apply_lft_stream(sigma, qp_stream(x)));
  std::vector<Integer> observed;
  observed.reserve(horizon);
  for (std::size_t i = 0; i < horizon; ++i) {
    auto v = ctx.out_digits.at(i);
    if (!v) break;
    observed.push_back(*v);
  }
  Alignment al = align_tail(observed, ctx.tail);
  if (!al.ok)
    throw AlignmentError(std::string(tail_label_name(ctx.label)) +
                         ": predicted tail not found in the expansion");
  ctx.k0 = al.k_start;
  ctx.p0 = Integer(al.start_pos) - 1;
  ctx.tail_start_pos = al.start_pos;
  ctx.tail.start = al.k_start;
  ctx.uv = ConvergentTable(ctx.out_digits);
  ctx.in_digits = ReplayStream(qp_stream(x));
  ctx.pq = ConvergentTable(ctx.in_digits);
  return ctx;
}

inline Integer leap_s(const Integer& p0, const Integer& p) { return p0 + 3 * p; }

inline Integer leap_g(const Integer& p0, const Integer& p) { return p0 + p + 2 * (p / 3); }

inline Integer leap_h(const Integer& p0, const Integer& p) {
  Integer base = p0 + 8 * (p / 4);
  switch (static_cast<int>(p % 4)) {
    case 0: return base;
    case 1: return base + 1;
    case 2: return base + 2;
    default: return base + 5;
  }
}

inline Integer leap_l1(const Integer& k0, const Integer& p) { return k0 + p - 2; }

inline Integer leap_l2(TailLabel t, const Integer& k0, const Integer& p) {
  switch (t) {
    case TailLabel::T2_1: return 3 * k0 + p - 4;
    case TailLabel::T2_2: return 3 * k0 + p - 3;
    case TailLabel::T2_3: return 3 * k0 + p - 2;
    default: throw std::invalid_argument("leap_l2: not an all-odd row");
  }
}

inline Integer leap_l34(TailLabel t, const Integer& k0, const Integer& p) {
  switch (t) {
    case TailLabel::T3_1: return 4 * k0 + p - 5;
    case TailLabel::T3_2: return 4 * k0 + p - 3;
    case TailLabel::T4_1: return 4 * k0 + p - 4;
    case TailLabel::T4_3: return 4 * k0 + p - 2;
    default: throw std::invalid_argument("leap_l34: not an alternating-parity row");
  }
}

// Output index hit by leap step p.
inline Integer leap_index(const LeapingContext& ctx, const Integer& p) {
  switch (leap_kind(ctx.label)) {
    case LeapKind::Stride3: return leap_s(ctx.p0, p);
    case LeapKind::FiveInThree: return leap_g(ctx.p0, p);
    case LeapKind::EightInFour: return leap_h(ctx.p0, p);
    default:
      throw NotApplicable(std::string(tail_label_name(ctx.label)) + ": no leap index map");
  }
}

// Input convergent index matched at leap step p.
inline Integer leap_conv_index(const LeapingContext& ctx, const Integer& p) {
  switch (leap_kind(ctx.label)) {
    case LeapKind::Stride3: return leap_l1(ctx.k0, p);
    case LeapKind::FiveInThree: return leap_l2(ctx.label, ctx.k0, p);
    case LeapKind::EightInFour: return leap_l34(ctx.label, ctx.k0, p);
    default:
      throw NotApplicable(std::string(tail_label_name(ctx.label)) + ": no leap index map");
  }
}

inline Rational weight_v(const Integer& p) {
  switch (static_cast<int>(p % 3)) {
    case 0: return Rational(2);
    case 1: return Rational(1, 2);
    default: return Rational(1);
  }
}

inline Rational weight_z(const Integer& p) {
  switch (static_cast<int>(p % 4)) {
    case 0: return Rational(1);
    case 1: return Rational(1, 2);
    case 2: return Rational(1);
    default: return Rational(2);
  }
}

inline Rational coeff_G(LeapingContext& ctx, const Integer& p) {
  Rational f = static_cast<int>(p % 3) == 0   ? Rational(1)
               : static_cast<int>(p % 3) == 1 ? Rational(1, 2)
                                              : Rational(2);
  return f * Rational(ctx.in_digit(leap_l2(ctx.label, ctx.k0, p)));
}

inline Rational coeff_H(LeapingContext& ctx, const Integer& p) {
  int r = static_cast<int>(p % 4);
  Rational f = r == 0 ? Rational(1) : r == 1 ? Rational(1, 2) : r == 2 ? Rational(2) : Rational(1);
  return f * Rational(ctx.in_digit(leap_l34(ctx.label, ctx.k0, p)));
}

// sigma applied to input convergent j, as the raw integer pair (denominator
// sign normalized) and as a reduced value.
inline std::pair<Integer, Integer> unreduced_B(LeapingContext& ctx, const Integer& j) {
  Convergent c = ctx.pq.at(static_cast<std::size_t>(j));
  auto nd = lft_apply_raw(ctx.sigma, c.p, c.q);
  if (nd.second < 0) {
    nd.first = -nd.first;
    nd.second = -nd.second;
  }
  return nd;
}

inline Rational leap_B(LeapingContext& ctx, const Integer& j) {
  auto nd = unreduced_B(ctx, j);
  return Rational(nd.first, nd.second);
}

// Three-term recurrences along the leap subsequence, checked exactly.
inline VerificationReport verify_recurrence(LeapingContext& ctx, const Integer& p_lo = 4,
                                            const Integer& p_hi = 30) {
  LeapKind kind = leap_kind(ctx.label);
  if (kind == LeapKind::ShiftSearch)
    throw NotApplicable(std::string(tail_label_name(ctx.label)) + ": no leap recurrence");
  VerificationReport r;
  r.branch = std::string("recurrence:") + tail_label_name(ctx.label);
  r.lo = p_lo;
  r.hi = p_hi;
  for (Integer p = p_lo; p <= p_hi; ++p) {
    Integer i2 = leap_index(ctx, p), i1 = leap_index(ctx, p - 1), i0 = leap_index(ctx, p - 2);
    Integer ci = leap_conv_index(ctx, p);
    if (i0 < 0 || ci < 0) continue;
    Convergent c2 = ctx.uv.at(static_cast<std::size_t>(i2));
    Convergent c1 = ctx.uv.at(static_cast<std::size_t>(i1));
    Convergent c0 = ctx.uv.at(static_cast<std::size_t>(i0));
    Rational coef, wt;
    if (kind == LeapKind::Stride3) {
      coef = Rational(ctx.in_digit(leap_l1(ctx.k0, p)));
      wt = Rational(1);
    } else if (kind == LeapKind::FiveInThree) {
      coef = coeff_G(ctx, p);
      wt = weight_v(p);
    } else {
      coef = coeff_H(ctx, p);
      wt = weight_z(p);
    }
    Rational lu = Rational(c2.p), ru = coef * Rational(c1.p) + wt * Rational(c0.p);
    Rational lv = Rational(c2.q), rv = coef * Rational(c1.q) + wt * Rational(c0.q);
    if (lu == ru && lv == rv) {
      ++r.passes;
    } else if (lu != ru) {
      r.failures.push_back({p, lu.str(), ru.str()});
    } else {
      r.failures.push_back({p, lv.str(), rv.str()});
    }
  }
  return r;
}

namespace detail {

inline VerificationReport verify_leaping_direct(LeapingContext& ctx, const Integer& p_lo,
                                                const Integer& p_hi) {
  VerificationReport r;
  r.branch = std::string("leaping:") + tail_label_name(ctx.label);
  r.lo = p_lo;
  r.hi = p_hi;
  LeapKind kind = leap_kind(ctx.label);
  for (Integer p = p_lo; p <= p_hi; ++p) {
    Integer i = leap_index(ctx, p);
    Integer j = leap_conv_index(ctx, p);
    if (i < 0 || j < 0) continue;
    Convergent uv = ctx.uv.at(static_cast<std::size_t>(i));
    Rational lhs = uv.value();
    Rational rhs = leap_B(ctx, j);
    if (lhs != rhs) {
      r.failures.push_back({p, lhs.str(), rhs.str()});
      continue;
    }
    if (kind == LeapKind::FiveInThree) {
      // The raw transformed pair is the output convergent on the nose for
      // p = 0, 2 mod 3 and exactly twice it for p = 1 mod 3.
      auto nd = unreduced_B(ctx, j);
      Integer mul = static_cast<int>(p % 3) == 1 ? 2 : 1;
      if (nd.first != mul * uv.p || nd.second != mul * uv.q) {
        r.failures.push_back({p, uv.p.str() + "/" + uv.q.str() + " (conv)",
                              nd.first.str() + "/" + nd.second.str() + " (raw)"});
        continue;
      }
    }
    ++r.passes;
  }
  return r;
}

inline VerificationReport verify_leaping_shifted(LeapingContext& ctx, const Integer& p_lo,
                                                 const Integer& p_hi) {
  VerificationReport r;
  r.branch = std::string("leaping-shift:") + tail_label_name(ctx.label);
  r.lo = p_lo;
  r.hi = p_hi;
  long best_shift = 0;
  Integer best_threshold = p_hi + 1;
  for (long c = -5; c <= 15; ++c) {
    Integer threshold = p_hi + 1;
    for (Integer p = p_hi; p >= p_lo; --p) {
      Integer i = p + c;
      if (i < 0 || p < 0) break;
      bool match;
      try {
        match = ctx.uv.at(static_cast<std::size_t>(i)).value() == leap_B(ctx, p);
      } catch (const PoleError&) {
        match = false;
      }
      if (!match) break;
      threshold = p;
    }
    if (threshold < best_threshold) {
      best_threshold = threshold;
      best_shift = c;
    }
  }
  r.threshold = best_threshold;
  r.shift = Integer(best_shift);
  if (best_threshold <= p_hi) r.passes = static_cast<std::size_t>(p_hi - best_threshold + 1);
  // Demand a solid run, not a lucky pair at the end of the range.
  if (r.passes < 8) {
    for (Integer p = p_lo; p <= p_hi && r.failures.size() < 8; ++p) {
      Integer i = p + best_shift;
      if (i < 0) continue;
      Rational lhs = ctx.uv.at(static_cast<std::size_t>(i)).value();
      Rational rhs = leap_B(ctx, p);
      if (lhs != rhs) r.failures.push_back({p, lhs.str(), rhs.str()});
    }
  }
  return r;
}

}  // namespace detail

// Leap equalities U/V = sigma(input convergent). Rows with an index map are
// checked directly; the others search for the index shift and threshold past
// which the equality settles.
inline VerificationReport verify_leaping(LeapingContext& ctx, const Integer& p_lo = 3,
                                         const Integer& p_hi = 30) {
  if (leap_kind(ctx.label) == LeapKind::ShiftSearch)
    return detail::verify_leaping_shifted(ctx, p_lo, p_hi);
  return detail::verify_leaping_direct(ctx, p_lo, p_hi);
}

// Predicted tail against the streamed digits over a window of positions.
inline VerificationReport verify_tail(LeapingContext& ctx, std::size_t window = 200) {
  VerificationReport rep;
  rep.branch = std::string("tail:") + tail_label_name(ctx.label);
  rep.lo = Integer(ctx.tail_start_pos);
  rep.hi = Integer(ctx.tail_start_pos + window) - 1;
  std::vector<Integer> want = qp_evaluate(ctx.tail, window);
  for (std::size_t i = 0; i < window; ++i) {
    std::size_t pos = ctx.tail_start_pos + i;
    const Integer& got = ctx.out_digits.require(pos);
    if (got == want[i]) {
      ++rep.passes;
    } else {
      rep.failures.push_back({Integer(pos), to_string(got), to_string(want[i])});
    }
  }
  return rep;
}

}  // namespace mcf
