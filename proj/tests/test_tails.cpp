#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace mcf;

TEST_CASE("class and case pick the tail shape") {
  CHECK(tail_label(CFClass::CF1, DecompCase::M) == TailLabel::T1_1);
  CHECK(tail_label(CFClass::CF1, DecompCase::MR) == TailLabel::T1_2);
  CHECK(tail_label(CFClass::CF1, DecompCase::MRJ) == TailLabel::T1_3);
  CHECK(tail_label(CFClass::CF2, DecompCase::M) == TailLabel::T2_1);
  CHECK(tail_label(CFClass::CF3, DecompCase::MR) == TailLabel::T3_2);
  CHECK(tail_label(CFClass::CF4, DecompCase::MRJ) == TailLabel::T4_3);
  CHECK_THROWS_AS(tail_label(CFClass::Unknown, DecompCase::M), ClassMismatch);
  CHECK(tail_label_class(TailLabel::T2_2) == CFClass::CF2);
  CHECK(tail_label_class(TailLabel::T4_1) == CFClass::CF4);
}

TEST_CASE("every machine rule preserves the defining invariant") {
  for (MachineState st : {MachineState::M, MachineState::A, MachineState::B, MachineState::C}) {
    for (char letter : {'R', 'L'}) {
      for (long q = 1; q <= 12; ++q) {
        MachineEmit e;
        try {
          e = machine_step(st, letter, q);
        } catch (const ClassMismatch&) {
          continue;
        }
        INFO(machine_state_name(st) << " + " << letter << "^" << q);
        CHECK(machine_state_matrix(st) * rl_pow(letter, q) ==
              rl_word_to_matrix(e.word) * machine_state_matrix(e.next));
      }
    }
  }
}

TEST_CASE("machine rejects what no class produces") {
  CHECK_THROWS_AS(machine_step(MachineState::M, 'L', 3), ClassMismatch);
  CHECK_THROWS_AS(machine_step(MachineState::C, 'R', 3), ClassMismatch);
  CHECK_THROWS_AS(machine_step(MachineState::B, 'L', 2), ClassMismatch);
  CHECK_THROWS_AS(machine_step(MachineState::M, 'R', 0), NonPositiveQuotient);
  CHECK_THROWS_AS(machine_step(MachineState::A, 'x', 1), std::invalid_argument);
}

TEST_CASE("machine digits equal streamed transform digits") {
  tst::Rng rng(99);
  for (CFClass cls : {CFClass::CF1, CFClass::CF2, CFClass::CF3, CFClass::CF4}) {
    for (DecompCase kase : {DecompCase::M, DecompCase::MR, DecompCase::MRJ}) {
      for (int trial = 0; trial < 3; ++trial) {
        QuasiPeriodicCF x = tst::rnd_affine_family(rng, cls);
        auto machine = machine_run(kase, qp_stream(x)).take(40);
        auto streamed = apply_lft_stream(decomp_case_matrix(kase), qp_stream(x)).take(40);
        INFO(cf_class_name(cls) << " " << decomp_case_name(kase) << " on " << format_cf(x));
        CHECK(machine == streamed);
      }
    }
  }
}

TEST_CASE("machine runs into a mismatch when the parity pattern breaks") {
  auto s = machine_run(DecompCase::M, QuotientStream::of({3, 3, 3, 3, 3, 4, 4, 4, 4, 4}));
  CHECK_THROWS_AS(s.take(30), ClassMismatch);
}

TEST_CASE("the worked constant example, by machine and by prediction") {
  auto digits = machine_run(DecompCase::M, QuotientStream::constant(3)).take(11);
  CHECK(digits == std::vector<Integer>{1, 1, 6, 1, 1, 1, 1, 6, 1, 1, 1});

  QuasiPeriodicCF x = parse_cf("[ ; 3 @ k=1..]");
  QuasiPeriodicCF tail = predicted_tail(x, TailLabel::T2_1, 1);
  CHECK(qp_evaluate(tail, 10) == std::vector<Integer>{1, 6, 1, 1, 1, 1, 6, 1, 1, 1});
}

TEST_CASE("block identities close for parity correct quotients") {
  tst::Rng rng(500);
  for (TailLabel lab : kAllTailLabels) {
    BlockIdentity b = block_identity(lab);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Integer> qs;
      for (const auto& step : b.steps) {
        long q = 2 * tst::rnd(rng, 1, 7);
        if (step.parity == Parity::Odd) q -= 1;
        qs.emplace_back(q);
      }
      IdentityCheck c = block_identity_check(lab, qs);
      INFO(tail_label_name(lab));
      CHECK(c.ok);
    }
  }
}

TEST_CASE("block identity guards") {
  CHECK_THROWS_AS(block_identity_check(TailLabel::T1_1, {2}), ArityError);
  CHECK_THROWS_AS(block_identity_check(TailLabel::T1_1, {3, 2}), ParityError);
  CHECK_THROWS_AS(block_identity_check(TailLabel::T2_1, {2, 1, 1, 1, 1, 1}), ParityError);
}

TEST_CASE("template shapes") {
  auto sizes = std::vector<std::size_t>{3, 2, 2, 5, 5, 5, 8, 8, 2, 8, 2, 8};
  auto strides = std::vector<long>{1, 2, 2, 3, 3, 3, 4, 4, 2, 4, 2, 4};
  for (std::size_t i = 0; i < kAllTailLabels.size(); ++i) {
    TailTemplate t = tail_template(kAllTailLabels[i]);
    CHECK(t.entries.size() == sizes[i]);
    CHECK(Integer(t.stride) == strides[i]);
  }
}

TEST_CASE("prediction demands a pure periodic input and a positive anchor") {
  QuasiPeriodicCF with_prefix = parse_cf("[5; 2*k @ k=1..]");
  CHECK_THROWS_AS(predicted_tail(with_prefix, TailLabel::T1_1, 1), std::invalid_argument);
  QuasiPeriodicCF finite = parse_cf("[5, 4]");
  CHECK_THROWS_AS(predicted_tail(finite, TailLabel::T1_1, 1), std::invalid_argument);
  QuasiPeriodicCF ok = parse_cf("[ ; 2*k @ k=1..]");
  CHECK_THROWS_AS(predicted_tail(ok, TailLabel::T1_1, 0), std::invalid_argument);
}

TEST_CASE("applicability scans anchors") {
  QuasiPeriodicCF h21 = hurwitz_cf(2, 1);
  QuasiPeriodicCF t = predicted_tail(h21, TailLabel::T1_1, 1);
  CHECK_FALSE(applicable(t));  // first entry evaluates to 0 at k = 1
  auto k0 = first_applicable_k0(h21, TailLabel::T1_1);
  REQUIRE(k0.has_value());
  CHECK(*k0 == 2);

  QuasiPeriodicCF h43 = hurwitz_cf(4, 3);
  auto k1 = first_applicable_k0(h43, TailLabel::T1_1);
  REQUIRE(k1.has_value());
  CHECK(*k1 == 1);
}

TEST_CASE("alignment finds the anchor block and offset") {
  // observed = junk digit, then blocks (k-1, 1, 1) from k = 3
  QuasiPeriodicCF pred;
  pred.period = {CoeffExpr::sub(CoeffExpr::var_k(), CoeffExpr::lit(1)), CoeffExpr::lit(1),
                 CoeffExpr::lit(1)};
  pred.start = 2;
  std::vector<Integer> observed{5};
  for (long k = 3; k < 60; ++k) {
    observed.emplace_back(k - 1);
    observed.emplace_back(1);
    observed.emplace_back(1);
  }
  Alignment al = align_tail(observed, pred);
  REQUIRE(al.ok);
  CHECK(al.start_pos == 1);
  CHECK(al.k_start == 3);

  std::vector<Integer> junk(130, Integer(9));
  CHECK_FALSE(align_tail(junk, pred).ok);
}
