#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mobiuscf/errors.hpp"
#include "mobiuscf/expr.hpp"
#include "mobiuscf/stream.hpp"

namespace mcf {

// [prefix; period expressions in k]_{k = start}. Empty period means a finite
// continued fraction (kept canonical: last quotient >= 2 unless it is the
// single term). Every emitted term at position >= 1 must be an integer >= 1.
struct QuasiPeriodicCF {
  std::vector<Integer> prefix;
  std::vector<CoeffExpr> period;
  Integer start{0};

  bool finite() const { return period.empty(); }

  bool same(const QuasiPeriodicCF& o) const {
    if (prefix != o.prefix || start != o.start || period.size() != o.period.size()) return false;
    for (std::size_t i = 0; i < period.size(); ++i)
      if (!period[i].same(o.period[i])) return false;
    return true;
  }
};

namespace detail {

inline Integer qp_term_at(const QuasiPeriodicCF& cf, std::size_t pos) {
  if (pos < cf.prefix.size()) return cf.prefix[pos];
  if (cf.finite()) throw StreamExhausted("finite continued fraction has no term " + std::to_string(pos));
  std::size_t off = pos - cf.prefix.size();
  std::size_t slot = off % cf.period.size();
  Integer k = cf.start + Integer(off / cf.period.size());
  Integer v = cf.period[slot].eval(k);
  if (pos >= 1 && v < 1)
    throw NonPositiveQuotient("term " + std::to_string(pos) + " evaluates to " + v.str());
  return v;
}

}  // namespace detail

inline QuotientStream qp_stream(const QuasiPeriodicCF& cf) {
  auto pos = std::make_shared<std::size_t>(0);
  auto held = std::make_shared<QuasiPeriodicCF>(cf);
  return QuotientStream([pos, held]() -> std::optional<Integer> {
    if (held->finite() && *pos >= held->prefix.size()) return std::nullopt;
    return detail::qp_term_at(*held, (*pos)++);
  });
}

inline std::vector<Integer> qp_evaluate(const QuasiPeriodicCF& cf, std::size_t count) {
  return qp_stream(cf).take(count);
}

// Shape plus entrywise agreement over `reps` period repetitions; the check
// used to compare differently built presentations of the same tail.
inline bool qp_equivalent(const QuasiPeriodicCF& x, const QuasiPeriodicCF& y, std::size_t reps = 16) {
  if (x.prefix != y.prefix || x.start != y.start || x.period.size() != y.period.size()) return false;
  for (std::size_t r = 0; r < reps; ++r) {
    Integer k = x.start + Integer(r);
    for (std::size_t i = 0; i < x.period.size(); ++i)
      if (x.period[i].eval(k) != y.period[i].eval(k)) return false;
  }
  return true;
}

namespace detail {

inline Parity required_parity(CFClass cls, std::size_t pos) {
  switch (cls) {
    case CFClass::CF1: return Parity::Even;
    case CFClass::CF2: return Parity::Odd;
    case CFClass::CF3: return pos % 2 == 0 ? Parity::Odd : Parity::Even;
    case CFClass::CF4: return pos % 2 == 0 ? Parity::Even : Parity::Odd;
    default: return Parity::Unknown;
  }
}

// Parity case analysis on the period expressions. The pattern of (slot,
// parity of k) repeats every two period turns, so checking the prefix plus
// two turns decides the whole expansion; Unknown anywhere aborts.
inline CFClass classify_symbolic(const QuasiPeriodicCF& cf) {
  if (cf.finite()) return CFClass::Unknown;
  try {
    if (!cf.prefix.empty() && cf.prefix[0] < 1) return CFClass::Unknown;
    if (cf.prefix.empty() && cf.period[0].eval(cf.start) < 1) return CFClass::Unknown;
  } catch (const NonIntegerCoefficient&) {
    return CFClass::Unknown;
  }

  std::size_t s = cf.period.size();
  std::vector<ParityPattern> pat(s);
  for (std::size_t i = 0; i < s; ++i) {
    pat[i] = cf.period[i].parity(cf.start);
    if (!pat[i].decided()) return CFClass::Unknown;
  }

  for (CFClass cls : {CFClass::CF1, CFClass::CF2, CFClass::CF3, CFClass::CF4}) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < cf.prefix.size(); ++i)
      ok = (is_even(cf.prefix[i]) ? Parity::Even : Parity::Odd) == required_parity(cls, i);
    for (std::size_t turn = 0; ok && turn < 2; ++turn) {
      bool k_even = is_even(cf.start + Integer(turn));
      for (std::size_t i = 0; ok && i < s; ++i) {
        std::size_t pos = cf.prefix.size() + turn * s + i;
        Parity have = k_even ? pat[i].at_even_k : pat[i].at_odd_k;
        ok = have == required_parity(cls, pos);
      }
    }
    if (ok) return cls;
  }
  return CFClass::Unknown;
}

}  // namespace detail

// Symbolic fast path first, window judgment as fallback.
inline CFClass classify(const QuasiPeriodicCF& cf, std::size_t horizon = 64) {
  CFClass c = detail::classify_symbolic(cf);
  if (c != CFClass::Unknown) return c;
  try {
    return classify_digits(qp_evaluate(cf, horizon));
  } catch (const NonPositiveQuotient&) {
    return CFClass::Unknown;
  } catch (const NonIntegerCoefficient&) {
    return CFClass::Unknown;
  }
}

}  // namespace mcf
