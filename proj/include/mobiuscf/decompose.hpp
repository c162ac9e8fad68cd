#pragma once

#include <array>
#include <optional>
#include <string>

#include "mobiuscf/errors.hpp"
#include "mobiuscf/matrix.hpp"

namespace mcf {

// Every integer matrix S with |det S| = 2 splits as S = T * W with T
// unimodular and W one of M, M*R, M*R*J, picked by the parity pattern of S.
// Exactly one pattern fits: two at once would force all four entries even,
// contradicting |det| = 2.
enum class DecompCase { M, MR, MRJ };

// Case names carry the leading unimodular factor: S = T * M is "TM" and so on.
inline const char* decomp_case_name(DecompCase c) {
  switch (c) {
    case DecompCase::M: return "TM";
    case DecompCase::MR: return "TMR";
    default: return "TMRJ";
  }
}

inline Mat2 decomp_case_matrix(DecompCase c) {
  switch (c) {
    case DecompCase::M: return kM;
    case DecompCase::MR: return kM * kR;
    default: return kM * kR * kJ;
  }
}

struct Decomposition {
  DecompCase kase;
  Mat2 t;
};

inline Decomposition decompose(const Mat2& s) {
  Integer det = mat_det(s);
  if (det != 2 && det != -2)
    throw BadDeterminant("decompose: determinant " + det.str() + ", need +-2");
  Integer two(2);
  if ((s.a - s.b) % two == 0 && (s.c - s.d) % two == 0)
    return {DecompCase::M,
            Mat2{(s.a + s.b) / 2, (s.a - s.b) / 2, (s.c + s.d) / 2, (s.c - s.d) / 2}};
  if (s.b % two == 0 && s.d % two == 0)
    return {DecompCase::MR, Mat2{s.b / 2, (2 * s.a - s.b) / 2, s.d / 2, (2 * s.c - s.d) / 2}};
  return {DecompCase::MRJ, Mat2{s.a / 2, (2 * s.b - s.a) / 2, s.c / 2, (2 * s.d - s.c) / 2}};
}

// The eleven commutation rules that push an R/L block through one of the
// half-determinant generators. The *_ODD / *_EVEN ones require the matching
// exponent parity; the rest hold for every integer exponent.
enum class IdentityName { JR, JL, AL, BR, MR_ODD, AR_ODD, BL_ODD, CL_ODD, MR_EVEN, AR_EVEN, CL_EVEN };

inline constexpr std::array<IdentityName, 11> kAllIdentities = {
    IdentityName::JR,      IdentityName::JL,      IdentityName::AL,     IdentityName::BR,
    IdentityName::MR_ODD,  IdentityName::AR_ODD,  IdentityName::BL_ODD, IdentityName::CL_ODD,
    IdentityName::MR_EVEN, IdentityName::AR_EVEN, IdentityName::CL_EVEN};

inline const char* identity_name(IdentityName id) {
  switch (id) {
    case IdentityName::JR: return "JR";
    case IdentityName::JL: return "JL";
    case IdentityName::AL: return "AL";
    case IdentityName::BR: return "BR";
    case IdentityName::MR_ODD: return "MR_odd";
    case IdentityName::AR_ODD: return "AR_odd";
    case IdentityName::BL_ODD: return "BL_odd";
    case IdentityName::CL_ODD: return "CL_odd";
    case IdentityName::MR_EVEN: return "MR_even";
    case IdentityName::AR_EVEN: return "AR_even";
    default: return "CL_even";
  }
}

struct IdentityCheck {
  Mat2 lhs, rhs;
  bool ok;
};

inline IdentityCheck verify_identity(IdentityName id, const Integer& h) {
  auto odd_only = [&] {
    if (!is_odd(h)) throw ParityError(std::string(identity_name(id)) + ": exponent must be odd");
  };
  auto even_only = [&] {
    if (!is_even(h)) throw ParityError(std::string(identity_name(id)) + ": exponent must be even");
  };
  Mat2 lhs, rhs;
  switch (id) {
    case IdentityName::JR:
      lhs = kJ * rl_pow('R', h);
      rhs = rl_pow('L', h) * kJ;
      break;
    case IdentityName::JL:
      lhs = kJ * rl_pow('L', h);
      rhs = rl_pow('R', h) * kJ;
      break;
    case IdentityName::AL:
      lhs = kAuxA * rl_pow('L', h);
      rhs = rl_pow('R', 2 * h) * kAuxA;
      break;
    case IdentityName::BR:
      lhs = kAuxB * rl_pow('R', h);
      rhs = rl_pow('L', 2 * h) * kAuxB;
      break;
    case IdentityName::MR_ODD:
      odd_only();
      lhs = kM * rl_pow('R', h);
      rhs = kR * rl_pow('L', (h - 1) / 2) * kAuxA;
      break;
    case IdentityName::AR_ODD:
      odd_only();
      lhs = kAuxA * rl_pow('R', h);
      rhs = rl_pow('L', (h - 1) / 2) * kAuxC;
      break;
    case IdentityName::BL_ODD:
      odd_only();
      lhs = kAuxB * rl_pow('L', h);
      rhs = rl_pow('R', (h - 1) / 2) * kL * kM;
      break;
    case IdentityName::CL_ODD:
      odd_only();
      lhs = kAuxC * rl_pow('L', h);
      rhs = kR * kL * rl_pow('R', (h - 1) / 2) * kAuxB;
      break;
    case IdentityName::MR_EVEN:
      even_only();
      lhs = kM * rl_pow('R', h);
      rhs = kR * rl_pow('L', (h - 2) / 2) * kAuxC;
      break;
    case IdentityName::AR_EVEN:
      even_only();
      lhs = kAuxA * rl_pow('R', h);
      rhs = rl_pow('L', h / 2) * kAuxA;
      break;
    case IdentityName::CL_EVEN:
      even_only();
      lhs = kAuxC * rl_pow('L', h);
      rhs = kR * kL * rl_pow('R', (h - 2) / 2) * kL * kM;
      break;
  }
  return {lhs, rhs, lhs == rhs};
}

// Greedy leading-block factorization of a nonnegative det-1 matrix into an
// R/L word (empty for the identity). Anything else yields nothing.
inline std::optional<RLWord> t_word_if_nonneg(Mat2 t) {
  if (mat_det(t) != 1) return std::nullopt;
  if (t.a < 0 || t.b < 0 || t.c < 0 || t.d < 0) return std::nullopt;
  RLWord w;
  while (!(t == kI)) {
    bool r_dom = t.a >= t.c && t.b >= t.d;
    bool l_dom = t.c >= t.a && t.d >= t.b;
    Integer k;
    bool have = false;
    if (r_dom) {
      if (t.c > 0) {
        k = t.a / t.c;
        have = true;
      }
      if (t.d > 0) {
        Integer k2 = t.b / t.d;
        if (!have || k2 < k) k = k2;
        have = true;
      }
      if (!have || k == 0) return std::nullopt;
      word_append(w, 'R', k);
      t = Mat2{t.a - k * t.c, t.b - k * t.d, t.c, t.d};
    } else if (l_dom) {
      if (t.a > 0) {
        k = t.c / t.a;
        have = true;
      }
      if (t.b > 0) {
        Integer k2 = t.d / t.b;
        if (!have || k2 < k) k = k2;
        have = true;
      }
      if (!have || k == 0) return std::nullopt;
      word_append(w, 'L', k);
      t = Mat2{t.a, t.b, t.c - k * t.a, t.d - k * t.b};
    } else {
      return std::nullopt;
    }
  }
  return w;
}

}  // namespace mcf
