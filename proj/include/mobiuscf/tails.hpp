#pragma once

#include <array>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mobiuscf/decompose.hpp"
#include "mobiuscf/errors.hpp"
#include "mobiuscf/matrix.hpp"
#include "mobiuscf/qpcf.hpp"
#include "mobiuscf/stream.hpp"

namespace mcf {

// One row per (quotient parity class) x (decomposition case).
enum class TailLabel { T1_1, T1_2, T1_3, T2_1, T2_2, T2_3, T3_1, T3_2, T3_3, T4_1, T4_2, T4_3 };

inline constexpr std::array<TailLabel, 12> kAllTailLabels = {
    TailLabel::T1_1, TailLabel::T1_2, TailLabel::T1_3, TailLabel::T2_1,
    TailLabel::T2_2, TailLabel::T2_3, TailLabel::T3_1, TailLabel::T3_2,
    TailLabel::T3_3, TailLabel::T4_1, TailLabel::T4_2, TailLabel::T4_3};

inline const char* tail_label_name(TailLabel t) {
  switch (t) {
    case TailLabel::T1_1: return "t1.1";
    case TailLabel::T1_2: return "t1.2";
    case TailLabel::T1_3: return "t1.3";
    case TailLabel::T2_1: return "t2.1";
    case TailLabel::T2_2: return "t2.2";
    case TailLabel::T2_3: return "t2.3";
    case TailLabel::T3_1: return "t3.1";
    case TailLabel::T3_2: return "t3.2";
    case TailLabel::T3_3: return "t3.3";
    case TailLabel::T4_1: return "t4.1";
    case TailLabel::T4_2: return "t4.2";
    default: return "t4.3";
  }
}

inline CFClass tail_label_class(TailLabel t) {
  switch (static_cast<int>(t) / 3) {
    case 0: return CFClass::CF1;
    case 1: return CFClass::CF2;
    case 2: return CFClass::CF3;
    default: return CFClass::CF4;
  }
}

inline TailLabel tail_label(CFClass cls, DecompCase kase) {
  int row;
  switch (cls) {
    case CFClass::CF1: row = 0; break;
    case CFClass::CF2: row = 1; break;
    case CFClass::CF3: row = 2; break;
    case CFClass::CF4: row = 3; break;
    default: throw ClassMismatch("tail_label: quotient parity class undetermined");
  }
  int col = kase == DecompCase::M ? 0 : kase == DecompCase::MR ? 1 : 2;
  return kAllTailLabels[static_cast<std::size_t>(3 * row + col)];
}

// The four working matrices the rewriting loop cycles through. Each has
// |det| = 2; pushing one through an input R/L block emits settled output
// letters on the left and leaves the next working matrix on the right.
enum class MachineState { M, A, B, C };

inline const char* machine_state_name(MachineState s) {
  switch (s) {
    case MachineState::M: return "M";
    case MachineState::A: return "A";
    case MachineState::B: return "B";
    default: return "C";
  }
}

inline Mat2 machine_state_matrix(MachineState s) {
  switch (s) {
    case MachineState::M: return kM;
    case MachineState::A: return kAuxA;
    case MachineState::B: return kAuxB;
    default: return kAuxC;
  }
}

struct MachineEmit {
  RLWord word;
  MachineState next;
};

// state * letter^q  ==  word * next_state, by the commutation identities.
// Combinations outside the table never occur when the input quotients fit
// one of the four parity classes.
inline MachineEmit machine_step(MachineState st, char letter, const Integer& q) {
  if (letter != 'R' && letter != 'L') throw std::invalid_argument("machine_step: letter must be R or L");
  if (q < 1) throw NonPositiveQuotient("machine step on exponent " + q.str());
  bool odd = is_odd(q);
  RLWord w;
  switch (st) {
    case MachineState::M:
      if (letter == 'R') {
        word_append(w, 'R', 1);
        if (odd) {
          word_append(w, 'L', (q - 1) / 2);
          return {w, MachineState::A};
        }
        word_append(w, 'L', (q - 2) / 2);
        return {w, MachineState::C};
      }
      break;
    case MachineState::A:
      if (letter == 'R') {
        if (odd) {
          word_append(w, 'L', (q - 1) / 2);
          return {w, MachineState::C};
        }
        word_append(w, 'L', q / 2);
        return {w, MachineState::A};
      }
      word_append(w, 'R', 2 * q);
      return {w, MachineState::A};
    case MachineState::B:
      if (letter == 'R') {
        word_append(w, 'L', 2 * q);
        return {w, MachineState::B};
      }
      if (odd) {
        word_append(w, 'R', (q - 1) / 2);
        word_append(w, 'L', 1);
        return {w, MachineState::M};
      }
      break;
    case MachineState::C:
      if (letter == 'L') {
        word_append(w, 'R', 1);
        word_append(w, 'L', 1);
        if (odd) {
          word_append(w, 'R', (q - 1) / 2);
          return {w, MachineState::B};
        }
        word_append(w, 'R', (q - 2) / 2);
        word_append(w, 'L', 1);
        return {w, MachineState::M};
      }
      break;
  }
  throw ClassMismatch(std::string("machine: no rule for state ") + machine_state_name(st) + " on " +
                      letter + "^" + q.str() + (is_odd(q) ? " (odd)" : " (even)"));
}

// Runs the rewriting machine over a whole quotient stream and emits the
// output quotients as they settle. The W part of a decomposition S = T * W
// determines the startup: W = M reads the input word as is, W = M*R merges
// an extra unit into the leading R block, and W = M*R*J flips every letter
// (the unit R block is processed up front). Output stops when the input
// does; the unsettled trailing run is withheld, so finite inputs yield only
// the digits that can no longer change.
inline QuotientStream machine_run(DecompCase kase, QuotientStream in) {
  struct Run {
    QuotientStream in;
    DecompCase kase;
    MachineState st = MachineState::M;
    bool primed = false;
    std::size_t index = 0;
    char run_letter = 'R';
    Integer run_len{0};
    bool started = false;
    std::vector<Integer> ready;
    std::size_t rpos = 0;
  };
  auto rs = std::make_shared<Run>();
  rs->in = std::move(in);
  rs->kase = kase;
  return QuotientStream([rs]() -> std::optional<Integer> {
    auto append = [&](const RLWord& w) {
      for (const auto& blk : w) {
        if (blk.exp == 0) continue;
        if (!rs->started) {
          if (blk.letter == 'L') rs->ready.push_back(0);
          rs->run_letter = blk.letter;
          rs->run_len = blk.exp;
          rs->started = true;
        } else if (blk.letter == rs->run_letter) {
          rs->run_len += blk.exp;
        } else {
          rs->ready.push_back(rs->run_len);
          rs->run_letter = blk.letter;
          rs->run_len = blk.exp;
        }
      }
    };
    while (rs->rpos >= rs->ready.size()) {
      if (!rs->primed) {
        rs->primed = true;
        if (rs->kase == DecompCase::MRJ) {
          auto e = machine_step(rs->st, 'R', Integer(1));
          rs->st = e.next;
          append(e.word);
        }
      }
      auto q = rs->in.next();
      if (!q) return std::nullopt;
      Integer qq = *q;
      bool flipped = rs->kase == DecompCase::MRJ;
      char letter = (rs->index % 2 == 0) != flipped ? 'R' : 'L';
      if (rs->kase == DecompCase::MR && rs->index == 0) qq += 1;
      auto e = machine_step(rs->st, letter, qq);
      rs->st = e.next;
      ++rs->index;
      append(e.word);
    }
    return rs->ready[rs->rpos++];
  });
}

// Periodic state cycle underlying each row, with the quotient parities its
// class imposes. Feeding any admissible exponents through one full cycle
// returns the machine to the starting state, and the matrix identity
// start * prod(letter^q) == prod(emitted) * start holds exactly.
struct BlockStep {
  char letter;
  Parity parity;
};

struct BlockIdentity {
  MachineState start;
  std::vector<BlockStep> steps;
};

inline BlockIdentity block_identity(TailLabel t) {
  using S = MachineState;
  constexpr Parity E = Parity::Even, O = Parity::Odd;
  switch (t) {
    case TailLabel::T1_1: return {S::M, {{'R', E}, {'L', E}}};
    case TailLabel::T1_2: return {S::A, {{'L', E}, {'R', E}}};
    case TailLabel::T1_3: return {S::A, {{'L', E}, {'R', E}}};
    case TailLabel::T2_1: return {S::M, {{'R', O}, {'L', O}, {'R', O}, {'L', O}, {'R', O}, {'L', O}}};
    case TailLabel::T2_2: return {S::C, {{'L', O}, {'R', O}, {'L', O}, {'R', O}, {'L', O}, {'R', O}}};
    case TailLabel::T2_3: return {S::A, {{'L', O}, {'R', O}, {'L', O}, {'R', O}, {'L', O}, {'R', O}}};
    case TailLabel::T3_1: return {S::M, {{'R', O}, {'L', E}, {'R', O}, {'L', E}}};
    case TailLabel::T3_2: return {S::C, {{'L', E}, {'R', O}, {'L', E}, {'R', O}}};
    case TailLabel::T3_3: return {S::A, {{'L', O}, {'R', E}}};
    case TailLabel::T4_1: return {S::M, {{'R', E}, {'L', O}, {'R', E}, {'L', O}}};
    case TailLabel::T4_2: return {S::A, {{'L', O}, {'R', E}}};
    default: return {S::A, {{'L', E}, {'R', O}, {'L', E}, {'R', O}}};
  }
}

inline IdentityCheck block_identity_check(TailLabel t, const std::vector<Integer>& qs) {
  BlockIdentity b = block_identity(t);
  if (qs.size() != b.steps.size())
    throw ArityError(std::string(tail_label_name(t)) + ": block takes " +
                     std::to_string(b.steps.size()) + " quotients, got " + std::to_string(qs.size()));
  for (std::size_t i = 0; i < qs.size(); ++i) {
    bool want_even = b.steps[i].parity == Parity::Even;
    if (want_even != is_even(qs[i]))
      throw ParityError(std::string(tail_label_name(t)) + ": quotient " + std::to_string(i) +
                        " must be " + (want_even ? "even" : "odd"));
  }
  Mat2 lhs = machine_state_matrix(b.start);
  for (std::size_t i = 0; i < qs.size(); ++i) lhs = lhs * rl_pow(b.steps[i].letter, qs[i]);
  MachineState st = b.start;
  RLWord w;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    auto e = machine_step(st, b.steps[i].letter, qs[i]);
    word_append(w, e.word);
    st = e.next;
  }
  Mat2 rhs = rl_word_to_matrix(w) * machine_state_matrix(st);
  return {lhs, rhs, lhs == rhs && st == b.start};
}

// Closed form of the eventual output period. Entry j of block k is either a
// literal 1 or a rewrite of the input quotient at index stride*k + offset.
enum class Transform { Sub2Div2, Sub1Div2, Div2, Times2 };

inline CoeffExpr apply_transform(Transform t, const CoeffExpr& e) {
  switch (t) {
    case Transform::Sub2Div2: return CoeffExpr::div(CoeffExpr::sub(e, CoeffExpr::lit(2)), CoeffExpr::lit(2));
    case Transform::Sub1Div2: return CoeffExpr::div(CoeffExpr::sub(e, CoeffExpr::lit(1)), CoeffExpr::lit(2));
    case Transform::Div2: return CoeffExpr::div(e, CoeffExpr::lit(2));
    default: return CoeffExpr::mul(CoeffExpr::lit(2), e);
  }
}

struct TailEntry {
  bool is_ref;
  Integer lit;
  long offset;
  Transform tr;

  static TailEntry one() { return {false, 1, 0, Transform::Div2}; }
  static TailEntry ref(long offset, Transform tr) { return {true, 0, offset, tr}; }
};

struct TailTemplate {
  long stride;
  std::vector<TailEntry> entries;
};

inline TailTemplate tail_template(TailLabel t) {
  using E = TailEntry;
  constexpr Transform S2 = Transform::Sub2Div2, S1 = Transform::Sub1Div2, D = Transform::Div2,
                      X = Transform::Times2;
  switch (t) {
    case TailLabel::T1_1: return {1, {E::ref(-1, S2), E::one(), E::one()}};
    case TailLabel::T1_2: return {2, {E::ref(-2, D), E::ref(-1, X)}};
    case TailLabel::T1_3: return {2, {E::ref(-1, D), E::ref(0, X)}};
    case TailLabel::T2_1: return {3, {E::ref(-3, S1), E::ref(-2, X), E::ref(-1, S1), E::one(), E::one()}};
    case TailLabel::T2_2: return {3, {E::ref(-2, S1), E::ref(-1, X), E::ref(0, S1), E::one(), E::one()}};
    case TailLabel::T2_3: return {3, {E::ref(-1, S1), E::ref(0, X), E::ref(1, S1), E::one(), E::one()}};
    case TailLabel::T3_1:
      return {4, {E::ref(-4, S1), E::ref(-3, X), E::ref(-2, S1), E::one(), E::one(), E::ref(-1, S2),
                  E::one(), E::one()}};
    case TailLabel::T3_2:
      return {4, {E::ref(-2, S1), E::ref(-1, X), E::ref(0, S1), E::one(), E::one(), E::ref(1, S2),
                  E::one(), E::one()}};
    case TailLabel::T3_3: return {2, {E::ref(-1, D), E::ref(0, X)}};
    case TailLabel::T4_1:
      return {4, {E::ref(-3, S1), E::ref(-2, X), E::ref(-1, S1), E::one(), E::one(), E::ref(0, S2),
                  E::one(), E::one()}};
    case TailLabel::T4_2: return {2, {E::ref(-2, D), E::ref(-1, X)}};
    default:
      return {4, {E::ref(-1, S1), E::ref(0, X), E::ref(1, S1), E::one(), E::one(), E::ref(2, S2),
                  E::one(), E::one()}};
  }
}

// Symbolic tail of the output expansion for a purely periodic symbolic
// input, anchored at block k0 >= 1. When the template stride and the input
// period size disagree, the output period covers lcm-many input blocks, so
// the returned period holds s/gcd(s, stride) template blocks.
inline QuasiPeriodicCF predicted_tail(const QuasiPeriodicCF& x, TailLabel label, const Integer& k0) {
  if (!x.prefix.empty())
    throw std::invalid_argument("predicted_tail: input must be purely periodic");
  if (x.period.empty()) throw std::invalid_argument("predicted_tail: input has no period");
  if (k0 < 1) throw std::invalid_argument("predicted_tail: anchor must be >= 1");
  TailTemplate tpl = tail_template(label);
  const long s = static_cast<long>(x.period.size());
  const long lam = s / std::gcd(s, tpl.stride);
  QuasiPeriodicCF out;
  out.start = k0;
  for (long m = 0; m < lam; ++m) {
    for (const TailEntry& en : tpl.entries) {
      if (!en.is_ref) {
        out.period.push_back(CoeffExpr::lit(en.lit));
        continue;
      }
      // Template block index at symbolic step k, phase m: lam*(k-k0)+k0+m.
      // The referenced input position is stride times that plus the offset;
      // its residue mod s is k-independent because s divides stride*lam.
      Integer jcoef = Integer(tpl.stride) * lam;
      Integer jconst = Integer(tpl.stride) * (k0 + m - Integer(lam) * k0) + en.offset;
      Integer slot = ((jconst % s) + s) % s;
      Integer acoef = jcoef / s;
      Integer aconst = (jconst - slot) / s + x.start;
      CoeffExpr arg = acoef == 1 ? CoeffExpr::var_k()
                                 : CoeffExpr::mul(CoeffExpr::lit(acoef), CoeffExpr::var_k());
      if (aconst > 0) arg = CoeffExpr::add(arg, CoeffExpr::lit(aconst));
      if (aconst < 0) arg = CoeffExpr::sub(arg, CoeffExpr::lit(-aconst));
      CoeffExpr digit = x.period[static_cast<std::size_t>(slot)].subst(arg);
      out.period.push_back(apply_transform(en.tr, digit));
    }
  }
  return out;
}

// The size conditions in one predicate: every predicted entry must be a
// positive integer. Checked over a finite leading window, which settles it
// for the affine and geometric coefficient families this engine meets.
inline bool applicable(const QuasiPeriodicCF& tail, long window = 128) {
  for (Integer k = tail.start; k <= tail.start + window; ++k) {
    for (const CoeffExpr& e : tail.period) {
      try {
        if (e.eval(k) < 1) return false;
      } catch (const NonIntegerCoefficient&) {
        return false;
      }
    }
  }
  return true;
}

inline std::optional<Integer> first_applicable_k0(const QuasiPeriodicCF& x, TailLabel label,
                                                  const Integer& kmax = 64, long window = 128) {
  for (Integer k0 = 1; k0 <= kmax; ++k0) {
    if (applicable(predicted_tail(x, label, k0), window)) return k0;
  }
  return std::nullopt;
}

// Where the predicted periodic tail actually begins inside an observed
// expansion: digits from start_pos onward equal the predicted blocks from
// k_start onward.
struct Alignment {
  std::size_t start_pos = 0;
  Integer k_start{0};
  bool ok = false;
};

inline Alignment align_tail(const std::vector<Integer>& observed, const QuasiPeriodicCF& predicted,
                            std::size_t max_start = 64, long max_k_ahead = 16,
                            std::size_t confirm = 96) {
  const std::size_t S = predicted.period.size();
  if (S == 0) return {};
  for (std::size_t start = 0; start + confirm <= observed.size() && start <= max_start; ++start) {
    for (long dk = 0; dk <= max_k_ahead; ++dk) {
      Integer k = predicted.start + dk;
      bool match = true;
      for (std::size_t t = 0; t < confirm && match; ++t) {
        Integer want;
        try {
          want = predicted.period[t % S].eval(k + Integer(t / S));
        } catch (const NonIntegerCoefficient&) {
          match = false;
          break;
        }
        if (observed[start + t] != want) match = false;
      }
      if (match) return {start, k, true};
    }
  }
  return {};
}

}  // namespace mcf
