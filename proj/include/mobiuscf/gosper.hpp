#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mobiuscf/errors.hpp"
#include "mobiuscf/matrix.hpp"
#include "mobiuscf/stream.hpp"

namespace mcf {

// Consecutive absorptions allowed before the run is declared stuck. A
// nonsingular transform of a canonical infinite input always settles the next
// output quotient eventually; this bound only guards degenerate inputs.
inline constexpr std::size_t kStallBound = 1'000'000;

// Rewrites a finite quotient word into canonical form without changing its
// value: interior zeros fold their neighbours ([.., a, 0, b, ..] = [.., a+b, ..]),
// a trailing zero cuts the word two short ([.., a, 0] = [..]), and a trailing
// one merges left ([.., a, 1] = [.., a+1]).
inline std::vector<Integer> canonicalize(std::vector<Integer> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
      if (w[i] == 0) {
        w[i - 1] += w[i + 1];
        w.erase(w.begin() + i, w.begin() + i + 2);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    if (w.size() >= 2 && w.back() == 0) {
      w.pop_back();
      w.pop_back();
      changed = true;
      continue;
    }
    if (w.size() >= 2 && w.back() == 1) {
      w.pop_back();
      w.back() += 1;
      changed = true;
    }
  }
  return w;
}

namespace detail {

struct GosperState {
  Mat2 s;
  QuotientStream in;
  bool absorbed_any = false;
  bool emitted_any = false;
  bool input_done = false;
  std::vector<Integer> drain;
  std::size_t drain_pos = 0;
};

// Produces the next output quotient, or nullopt at end of output.
//
// The state matrix maps the unread input tail to the unemitted output tail.
// A quotient m may be emitted once the tail is confined to [1, inf], i.e.
// after at least one absorption: the image interval has endpoints
// (a+b)/(c+d) and a/c, and when c > 0, c+d > 0 the map has no pole there,
// so matching floors pin floor(output) = m regardless of the exact tail.
inline std::optional<Integer> gosper_pull(const std::shared_ptr<GosperState>& g) {
  if (g->input_done) {
    if (g->drain_pos < g->drain.size()) return g->drain[g->drain_pos++];
    return std::nullopt;
  }
  std::size_t stall = 0;
  while (true) {
    if (g->absorbed_any && g->s.c > 0 && g->s.c + g->s.d > 0) {
      Integer at_inf = floor_div(g->s.a, g->s.c);
      Integer at_one = floor_div(g->s.a + g->s.b, g->s.c + g->s.d);
      if (at_inf == at_one) {
        g->s = Mat2{0, 1, 1, -at_inf} * g->s;
        g->emitted_any = true;
        return at_inf;
      }
    }
    auto q = g->in.next();
    if (!q) {
      g->input_done = true;
      // The exhausted tail is the empty word, value infinity, so the rest of
      // the output is the expansion of a/c. A vanished c with no output yet
      // means the input value was a pole of the transform; after at least one
      // emission it just means the previous quotient was the last.
      if (g->s.c == 0) {
        if (g->absorbed_any && !g->emitted_any)
          throw PoleError("transform sends the input value to infinity");
        return std::nullopt;
      }
      g->drain = cf_of_rational(Rational(g->s.a, g->s.c));
      g->drain_pos = 0;
      if (g->drain_pos < g->drain.size()) return g->drain[g->drain_pos++];
      return std::nullopt;
    }
    g->s = g->s * Mat2{*q, 1, 1, 0};
    g->absorbed_any = true;
    // The matrix and its negation are the same map, so keep the leading
    // denominator entry positive; otherwise a transform that is negative on
    // the input's tail never satisfies the emission test.
    if (g->s.c < 0 || (g->s.c == 0 && g->s.d < 0)) g->s = Mat2{-g->s.a, -g->s.b, -g->s.c, -g->s.d};
    if (++stall >= kStallBound) throw StalledError();
  }
}

}  // namespace detail

// Canonical expansion of s(x) for a canonical quotient stream x, produced
// lazily. Requires det s != 0. Finite inputs end the output at the right
// spot (or raise PoleError if s has a pole at the input value).
inline QuotientStream apply_lft_stream(Lft s, QuotientStream x) {
  if (mat_det(s) == 0) throw std::invalid_argument("apply_lft_stream: singular transform");
  auto g = std::make_shared<detail::GosperState>();
  g->s = s;
  g->in = std::move(x);
  return QuotientStream([g]() { return detail::gosper_pull(g); });
}

// Finite-word convenience wrapper; collects the whole output.
inline std::vector<Integer> apply_lft_cf(const Lft& s, const std::vector<Integer>& x) {
  auto out = apply_lft_stream(s, QuotientStream::of(x));
  std::vector<Integer> w;
  while (auto v = out.next()) w.push_back(*v);
  return w;
}

}  // namespace mcf
