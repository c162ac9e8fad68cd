#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace mcf;

namespace {

bool pred_m(const Mat2& s) { return is_even(s.a - s.b) && is_even(s.c - s.d); }
bool pred_mr(const Mat2& s) { return is_even(s.b) && is_even(s.d); }
bool pred_mrj(const Mat2& s) { return is_even(s.a) && is_even(s.c); }

}  // namespace

TEST_CASE("case matrices carry determinant +-2") {
  CHECK(decomp_case_matrix(DecompCase::M) == kM);
  CHECK(decomp_case_matrix(DecompCase::MR) == kM * kR);
  CHECK(decomp_case_matrix(DecompCase::MRJ) == kM * kR * kJ);
  for (DecompCase c : {DecompCase::M, DecompCase::MR, DecompCase::MRJ})
    CHECK(abs(mat_det(decomp_case_matrix(c))) == 2);
}

TEST_CASE("decomposition trichotomy on random determinant +-2 matrices") {
  tst::Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    Mat2 s = tst::rnd_mat_det(rng, -50, 50, 2);
    Decomposition dec = decompose(s);
    CHECK(abs(mat_det(dec.t)) == 1);
    CHECK(dec.t * decomp_case_matrix(dec.kase) == s);
    int hits = (pred_m(s) ? 1 : 0) + (pred_mr(s) ? 1 : 0) + (pred_mrj(s) ? 1 : 0);
    CHECK(hits == 1);
  }
}

TEST_CASE("decomposition of the named generators") {
  CHECK(decompose(kM).kase == DecompCase::M);
  CHECK(decompose(kM).t == kI);
  CHECK(decompose(kM * kR).kase == DecompCase::MR);
  CHECK(decompose(kM * kR * kJ).kase == DecompCase::MRJ);
  CHECK(decompose(kAuxA).kase == DecompCase::MR);
  CHECK(decompose(kAuxB).kase == DecompCase::MRJ);
  CHECK(decompose(kAuxC).kase == DecompCase::M);
}

TEST_CASE("wrong determinants are rejected") {
  CHECK_THROWS_AS(decompose(kI), BadDeterminant);
  CHECK_THROWS_AS(decompose(kJ), BadDeterminant);
  CHECK_THROWS_AS(decompose(Mat2{2, 0, 0, 2}), BadDeterminant);
  CHECK_THROWS_AS(decompose(Mat2{3, 0, 0, 1}), BadDeterminant);
}

TEST_CASE("exponent identities hold for every admissible integer") {
  for (IdentityName id : kAllIdentities) {
    int admissible = 0;
    for (long h = -20; h <= 20; ++h) {
      IdentityCheck c;
      try {
        c = verify_identity(id, h);
      } catch (const ParityError&) {
        continue;
      }
      ++admissible;
      INFO(identity_name(id) << " at h = " << h);
      CHECK(c.ok);
      CHECK(c.lhs == c.rhs);
    }
    CHECK(admissible >= 20);  // parity thins the range at most by half
  }
}

TEST_CASE("parity gates on the odd and even identities") {
  CHECK_THROWS_AS(verify_identity(IdentityName::MR_ODD, 4), ParityError);
  CHECK_THROWS_AS(verify_identity(IdentityName::AR_EVEN, 3), ParityError);
  CHECK_THROWS_AS(verify_identity(IdentityName::CL_EVEN, -1), ParityError);
  CHECK(verify_identity(IdentityName::MR_ODD, -1).ok);
  CHECK(verify_identity(IdentityName::MR_EVEN, 0).ok);
  CHECK(verify_identity(IdentityName::JR, 0).ok);
  CHECK(verify_identity(IdentityName::JR, -7).ok);
}

TEST_CASE("nonnegative unimodular matrices factor over R and L") {
  tst::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    std::size_t len = static_cast<std::size_t>(tst::rnd(rng, 0, 6));
    RLWord w;
    char letter = tst::rnd(rng, 0, 1) ? 'R' : 'L';
    for (std::size_t j = 0; j < len; ++j) {
      word_append(w, letter, tst::rnd(rng, 1, 6));
      letter = letter == 'R' ? 'L' : 'R';
    }
    Mat2 m = rl_word_to_matrix(w);
    auto got = t_word_if_nonneg(m);
    REQUIRE(got.has_value());
    CHECK(rl_word_to_matrix(*got) == m);
  }
  CHECK(t_word_if_nonneg(kI).has_value());
  CHECK(t_word_if_nonneg(kI)->empty());
  CHECK_FALSE(t_word_if_nonneg(kJ).has_value());              // det -1
  CHECK_FALSE(t_word_if_nonneg(Mat2{1, -1, 0, 1}).has_value());  // negative entry
  CHECK_FALSE(t_word_if_nonneg(Mat2{2, 0, 0, 1}).has_value());   // det 2
}
