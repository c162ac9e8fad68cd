#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mobiuscf/errors.hpp"
#include "mobiuscf/integer.hpp"
#include "mobiuscf/matrix.hpp"
#include "mobiuscf/rational.hpp"

namespace mcf {

// Lazy single-consumer sequence of partial quotients. Move-only so that the
// single-consumer discipline is visible in the types; use ReplayStream to
// share or revisit terms.
class QuotientStream {
 public:
  using Puller = std::function<std::optional<Integer>()>;

  QuotientStream() : pull_([] { return std::nullopt; }) {}
  explicit QuotientStream(Puller p) : pull_(std::move(p)) {}

  QuotientStream(const QuotientStream&) = delete;
  QuotientStream& operator=(const QuotientStream&) = delete;
  QuotientStream(QuotientStream&&) = default;
  QuotientStream& operator=(QuotientStream&&) = default;

  std::optional<Integer> next() { return pull_(); }

  Integer require_next() {
    auto v = next();
    if (!v) throw StreamExhausted();
    return *v;
  }

  static QuotientStream of(std::vector<Integer> terms) {
    auto idx = std::make_shared<std::size_t>(0);
    auto buf = std::make_shared<std::vector<Integer>>(std::move(terms));
    return QuotientStream([idx, buf]() -> std::optional<Integer> {
      if (*idx >= buf->size()) return std::nullopt;
      return (*buf)[(*idx)++];
    });
  }

  static QuotientStream constant(Integer a) {
    return QuotientStream([a]() -> std::optional<Integer> { return a; });
  }

  std::vector<Integer> take(std::size_t count) {
    std::vector<Integer> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      auto v = next();
      if (!v) break;
      out.push_back(*v);
    }
    return out;
  }

 private:
  Puller pull_;
};

// Buffering wrapper: pulls lazily, memoizes, and hands out replay views.
class ReplayStream {
 public:
  ReplayStream() : st_(std::make_shared<State>()) {}
  explicit ReplayStream(QuotientStream src) : st_(std::make_shared<State>()) {
    st_->src = std::move(src);
  }

  // Terms 0..i-1 known after a successful at(i-1).
  std::optional<Integer> at(std::size_t i) { return fetch(st_, i); }

  Integer require(std::size_t i) {
    auto v = at(i);
    if (!v) throw StreamExhausted("replay index " + std::to_string(i) + " past end");
    return *v;
  }

  bool has(std::size_t i) { return at(i).has_value(); }

  // Fresh single-consumer view reading through the shared buffer.
  QuotientStream replay(std::size_t from = 0) {
    auto st = st_;
    auto idx = std::make_shared<std::size_t>(from);
    return QuotientStream([st, idx]() -> std::optional<Integer> {
      auto v = fetch(st, *idx);
      if (v) ++(*idx);
      return v;
    });
  }

 private:
  struct State {
    QuotientStream src;
    std::vector<Integer> buf;
    bool done = false;
  };

  static std::optional<Integer> fetch(const std::shared_ptr<State>& st, std::size_t i) {
    while (st->buf.size() <= i && !st->done) {
      auto v = st->src.next();
      if (!v) {
        st->done = true;
        break;
      }
      st->buf.push_back(std::move(*v));
    }
    if (i < st->buf.size()) return st->buf[i];
    return std::nullopt;
  }

  std::shared_ptr<State> st_;
};

struct Convergent {
  Integer p, q;
  Rational value() const {
    if (q == 0) throw PoleError("convergent with zero denominator");
    return Rational(p, q);
  }
};

// p_i = a_i p_{i-1} + p_{i-2}, q_i likewise, seeded p_{-1}=1, p_{-2}=0,
// q_{-1}=0, q_{-2}=1. Pairs are returned exactly as produced by the
// recurrence, with a reduced view available via value().
inline std::vector<Convergent> convergents(QuotientStream s, std::size_t upto) {
  std::vector<Convergent> out;
  Integer pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
  for (std::size_t i = 0; i <= upto; ++i) {
    auto a = s.next();
    if (!a) break;
    Integer p = *a * pm1 + pm2;
    Integer q = *a * qm1 + qm2;
    out.push_back({p, q});
    pm2 = std::move(pm1);
    pm1 = std::move(p);
    qm2 = std::move(qm1);
    qm1 = std::move(q);
  }
  return out;
}

// Incremental convergents over a replayable stream.
class ConvergentTable {
 public:
  ConvergentTable() = default;
  explicit ConvergentTable(ReplayStream src) : src_(std::move(src)) {}

  Convergent at(std::size_t i) {
    while (tab_.size() <= i) {
      std::size_t t = tab_.size();
      auto a = src_.at(t);
      if (!a) throw StreamExhausted("convergent index " + std::to_string(t) + " past end");
      Integer pm1 = t >= 1 ? tab_[t - 1].p : Integer(1);
      Integer pm2 = t >= 2 ? tab_[t - 2].p : Integer(t == 1 ? 1 : 0);
      Integer qm1 = t >= 1 ? tab_[t - 1].q : Integer(0);
      Integer qm2 = t >= 2 ? tab_[t - 2].q : Integer(t == 1 ? 0 : 1);
      tab_.push_back({*a * pm1 + pm2, *a * qm1 + qm2});
    }
    return tab_[i];
  }

  ReplayStream& source() { return src_; }

 private:
  ReplayStream src_;
  std::vector<Convergent> tab_;
};

// Drops terms 0..n, so the result starts at a_{n+1}.
inline QuotientStream tail_of(QuotientStream s, std::size_t n) {
  auto held = std::make_shared<QuotientStream>(std::move(s));
  auto skipped = std::make_shared<bool>(false);
  auto drop = n + 1;
  return QuotientStream([held, skipped, drop]() -> std::optional<Integer> {
    if (!*skipped) {
      for (std::size_t i = 0; i < drop; ++i)
        if (!held->next()) throw StreamExhausted("tail: fewer terms than dropped prefix");
      *skipped = true;
    }
    return held->next();
  });
}

enum class CFClass { CF1, CF2, CF3, CF4, Unknown };

inline const char* cf_class_name(CFClass c) {
  switch (c) {
    case CFClass::CF1: return "CF1";
    case CFClass::CF2: return "CF2";
    case CFClass::CF3: return "CF3";
    case CFClass::CF4: return "CF4";
    default: return "unknown";
  }
}

// Window judgment on an explicit block of leading quotients. Needs at least
// two terms to separate the alternating classes from the constant ones.
inline CFClass classify_digits(const std::vector<Integer>& w) {
  if (w.size() < 2) return CFClass::Unknown;
  for (const auto& q : w)
    if (q < 1) return CFClass::Unknown;
  bool cf1 = true, cf2 = true, cf3 = true, cf4 = true;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool even = is_even(w[i]);
    cf1 &= even;
    cf2 &= !even;
    if (i % 2 == 0) {
      cf3 &= !even;
      cf4 &= even;
    } else {
      cf3 &= even;
      cf4 &= !even;
    }
  }
  if (cf1) return CFClass::CF1;
  if (cf2) return CFClass::CF2;
  if (cf3) return CFClass::CF3;
  if (cf4) return CFClass::CF4;
  return CFClass::Unknown;
}

inline CFClass classify(QuotientStream s, std::size_t horizon = 64) {
  return classify_digits(s.take(horizon));
}

// Floor-based expansion; canonical by construction (never ends in 1 except
// for the single-term [1]).
inline std::vector<Integer> cf_of_rational(Rational x) {
  std::vector<Integer> out;
  while (true) {
    Integer a = x.floor();
    out.push_back(a);
    Rational frac = x - Rational(a);
    if (frac.num == 0) break;
    x = Rational(frac.den, frac.num);
  }
  return out;
}

inline Rational rational_of_cf(const std::vector<Integer>& cf) {
  if (cf.empty()) throw StreamExhausted("empty continued fraction has no value");
  Rational v(cf.back());
  for (std::size_t i = cf.size() - 1; i-- > 0;) {
    if (v.num == 0) throw PoleError("zero tail value in finite continued fraction");
    v = Rational(cf[i]) + Rational(v.den, v.num);
  }
  return v;
}

}  // namespace mcf
