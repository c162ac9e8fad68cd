#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace mcf;

namespace {

CoeffExpr lit(long v) { return CoeffExpr::lit(v); }
CoeffExpr k() { return CoeffExpr::var_k(); }

}  // namespace

TEST_CASE("expression evaluation") {
  CoeffExpr e = CoeffExpr::add(CoeffExpr::mul(lit(2), k()), lit(-1));
  CHECK(e.eval(4) == 7);
  CHECK(e.eval(0) == -1);
  CHECK(CoeffExpr::pow(lit(3), k()).eval(4) == 81);
  CHECK(CoeffExpr::pow(k(), lit(0)).eval(9) == 1);
  CHECK(CoeffExpr::div(CoeffExpr::mul(lit(6), k()), lit(3)).eval(5) == 10);
  CHECK_THROWS_AS(CoeffExpr::div(lit(3), lit(2)).eval(0), NonIntegerCoefficient);
  CHECK_THROWS_AS(CoeffExpr::div(k(), lit(0)).eval(1), NonIntegerCoefficient);
  CHECK_THROWS_AS(CoeffExpr::pow(lit(2), lit(-1)).eval(0), NonIntegerCoefficient);
}

TEST_CASE("structure predicates") {
  CoeffExpr e = CoeffExpr::mul(lit(3), k());
  CHECK(e.mentions_k());
  CHECK_FALSE(e.is_literal());
  CHECK(lit(4).is_literal());
  CHECK(e.same(CoeffExpr::mul(lit(3), k())));
  CHECK_FALSE(e.same(CoeffExpr::mul(k(), lit(3))));
  CHECK(e.subst(CoeffExpr::add(k(), lit(1))).eval(2) == 9);
}

TEST_CASE("parity patterns") {
  auto p = CoeffExpr::add(CoeffExpr::mul(lit(2), k()), lit(1)).parity(1);
  CHECK(p.at_even_k == Parity::Odd);
  CHECK(p.at_odd_k == Parity::Odd);
  auto q = k().parity(1);
  CHECK(q.at_even_k == Parity::Even);
  CHECK(q.at_odd_k == Parity::Odd);
  auto r = CoeffExpr::mul(lit(3), k()).parity(1);
  CHECK(r.at_even_k == Parity::Even);
  CHECK(r.at_odd_k == Parity::Odd);
}

TEST_CASE("parsing the named expansions") {
  QuasiPeriodicCF e = parse_cf("[2; 1, 2*k, 1 @ k=1..]");
  CHECK(qp_evaluate(e, 7) == std::vector<Integer>{2, 1, 2, 1, 1, 4, 1});

  QuasiPeriodicCF tan1 = parse_cf("[1; 2*k - 1, 1 @ k=1..]");
  CHECK(qp_evaluate(tan1, 7) == std::vector<Integer>{1, 1, 1, 3, 1, 5, 1});

  QuasiPeriodicCF em1 = parse_cf("[0; 4*k + 2 @ k=0..]");
  CHECK(qp_evaluate(em1, 4) == std::vector<Integer>{0, 2, 6, 10});
}

TEST_CASE("parsing details and errors") {
  QuasiPeriodicCF f = parse_cf("[3, 1, 2]");
  CHECK(f.finite());
  CHECK(f.prefix == std::vector<Integer>{3, 1, 2});

  QuasiPeriodicCF g = parse_cf("[-2; k^2 @ k=3..]");
  CHECK(g.prefix == std::vector<Integer>{-2});
  CHECK(g.start == 3);
  CHECK(qp_evaluate(g, 3) == std::vector<Integer>{-2, 9, 16});

  CHECK(parse_cf("[ 5 ; 2*(k+1) @ k = 2 .. ]").start == 2);

  CHECK_THROWS_AS(parse_cf("[1; 2*k]"), ParseError);        // period without anchor
  CHECK_THROWS_AS(parse_cf("1, 2, 3"), ParseError);         // no brackets
  CHECK_THROWS_AS(parse_cf("[1, 2"), ParseError);           // unterminated
  CHECK_THROWS_AS(parse_cf("[1] trailing"), ParseError);    // junk after
  CHECK_THROWS_AS(parse_cf("[1; k @ j=1..]"), ParseError);  // wrong variable
  CHECK_THROWS_AS(parse_cf("[1; 2**k @ k=1..]"), ParseError);
  try {
    parse_cf("[1, ?]");
    FAIL("expected a parse error");
  } catch (const ParseError& pe) {
    CHECK(pe.pos == 4);
  }
}

TEST_CASE("format and parse are inverse on random expansions") {
  tst::Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    QuasiPeriodicCF cf = tst::rnd_cf(rng);
    QuasiPeriodicCF back = parse_cf(format_cf(cf));
    CHECK(back.same(cf));
  }
}

TEST_CASE("quasi periodic streams") {
  QuasiPeriodicCF cf;
  cf.prefix = {Integer(7)};
  cf.period = {CoeffExpr::mul(lit(2), k()), lit(1)};
  cf.start = 1;
  CHECK(qp_evaluate(cf, 6) == std::vector<Integer>{7, 2, 1, 4, 1, 6});

  QuasiPeriodicCF bad = cf;
  bad.period[1] = lit(0);  // zero quotient at positive position
  auto s = qp_stream(bad);
  s.next();
  s.next();
  CHECK_THROWS_AS(s.next(), NonPositiveQuotient);

  QuasiPeriodicCF fin;
  fin.prefix = {Integer(2), Integer(3)};
  auto fs = qp_stream(fin);
  CHECK(fs.take(10) == std::vector<Integer>{2, 3});
}

TEST_CASE("equivalence of expansions") {
  QuasiPeriodicCF a = parse_cf("[1; 2*k @ k=1..]");
  QuasiPeriodicCF b = parse_cf("[1; 2*k @ k=1..]");
  QuasiPeriodicCF c = parse_cf("[1; k + k @ k=1..]");
  QuasiPeriodicCF d = parse_cf("[1; 2*k @ k=2..]");
  QuasiPeriodicCF e = parse_cf("[1; 2*k + 2 @ k=1..]");
  CHECK(qp_equivalent(a, b));
  CHECK(qp_equivalent(a, c));  // same values, different trees
  CHECK_FALSE(qp_equivalent(a, d));
  CHECK_FALSE(qp_equivalent(a, e));
}

TEST_CASE("symbolic classification") {
  CHECK(classify(parse_cf("[2; 2*k, 4 @ k=1..]")) == CFClass::CF1);
  CHECK(classify(parse_cf("[3; 2*k + 1, 5 @ k=1..]")) == CFClass::CF2);
  CHECK(classify(parse_cf("[3; 2*k, 7 @ k=1..]")) == CFClass::CF3);  // 3, 2, 7, 4, 7, ...
  CHECK(classify(parse_cf("[2; 2*k + 1, 6 @ k=1..]")) == CFClass::CF4);
  CHECK(classify(parse_cf("[2; k @ k=1..]")) == CFClass::CF4);  // 2, 1, 2, 3, 4: parity tracks position
  CHECK(classify(parse_cf("[2; k, 2 @ k=1..]")) == CFClass::Unknown);  // slot parity drifts with k
}
