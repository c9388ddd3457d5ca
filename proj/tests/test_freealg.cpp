#include <random>

#include "doctest.h"
#include "ncmf/error.hpp"
#include "support.hpp"

using namespace ncmf;
using testing_support::P;

TEST_CASE("prime fields reject composite characteristic") {
  CHECK_THROWS_AS(Field::prime(15), Error);
  CHECK_THROWS_AS(Field::prime(1), Error);
  CHECK(Field::prime(2147483647).characteristic() == 2147483647u);
}

TEST_CASE("scalar arithmetic") {
  Field f5 = Field::prime(5);
  CHECK(f5.add(f5.from_int(3), f5.from_int(4)) == f5.from_int(2));
  CHECK(f5.inv(f5.from_int(2)) == f5.from_int(3));
  CHECK(f5.from_rational(mpq_class(1, 2)) == f5.from_int(3));
  CHECK(f5.pow(f5.from_int(2), -1) == f5.from_int(3));
  CHECK(f5.multiplicative_order(f5.from_int(2), 10) == 4);
  Field q = Field::rationals();
  CHECK(q.add(q.from_rational(mpq_class(1, 2)), q.from_rational(mpq_class(1, 3))) ==
        q.from_rational(mpq_class(5, 6)));
  CHECK(q.format(q.from_rational(mpq_class(-3, 4))) == "-3/4");
  CHECK(Field::prime(7).format(Field::prime(7).from_int(6)) == "-1");
}

TEST_CASE("polynomial sums") {
  auto r = testing_support::ring(Field::rationals(), "x y z");
  CHECK((P(r, "x") + P(r, "-x")).is_zero());
  NcPoly s = (P(r, "x*y + y*x") + P(r, "-z^2"));
  CHECK(s == P(r, "y*x + x*y - z*z"));
  CHECK(s.to_string() == "-z^2 + y*x + x*y");
  auto r5 = testing_support::ring(Field::prime(5), "x y");
  CHECK(P(r5, "3*x") + P(r5, "4*x") == P(r5, "2*x"));
}

TEST_CASE("polynomial products keep word order") {
  auto r = testing_support::ring(Field::rationals(), "x y");
  CHECK(P(r, "x") * P(r, "y") == P(r, "x*y"));
  CHECK(!(P(r, "x*y") == P(r, "y*x")));
  CHECK(!(P(r, "x*y - y*x")).is_zero());
  CHECK(P(r, "(x + y)") * P(r, "(x - y)") == P(r, "x^2 - x*y + y*x - y^2"));
  CHECK(P(r, "1") * P(r, "x*y + 2") == P(r, "x*y + 2"));
}

TEST_CASE("deglex ordering uses weights then declared order") {
  auto r = testing_support::ring(Field::rationals(), "x:1 y:2");
  NcPoly p = P(r, "x + y + x^2 + x^3");
  CHECK(p.leading_word() == r->make_word({0, 0, 0}));
  CHECK(p.to_string() == "x^3 + y + x^2 + x");
  CHECK(r->make_word({1}) > r->make_word({0, 0}));
  CHECK(p.component(2) == P(r, "y + x^2"));
  CHECK(!p.homogeneous_degree());
  CHECK(P(r, "x*y").homogeneous_degree() == 3);
}

TEST_CASE("context mismatch is reported") {
  auto r1 = testing_support::ring(Field::rationals(), "x y");
  auto r2 = testing_support::ring(Field::prime(7), "x y");
  auto r3 = testing_support::ring(Field::rationals(), "x y");
  CHECK_THROWS_AS(P(r1, "x") + P(r2, "x"), Error);
  CHECK(P(r1, "x") + P(r3, "y") == P(r1, "x + y"));
}

TEST_CASE("substitution") {
  auto r = testing_support::ring(Field::prime(7), "x y");
  std::vector<NcPoly> ident = {P(r, "x"), P(r, "y")};
  NcPoly p = P(r, "x*y - 3*y^2 + 1");
  CHECK(substitute(p, ident) == p);
  std::vector<NcPoly> zeta = {P(r, "x + y"), P(r, "2*y")};
  CHECK(substitute(substitute(P(r, "x"), zeta), zeta) == P(r, "x + 3*y"));
  std::vector<NcPoly> bad = {P(r, "x^2"), P(r, "y")};
  CHECK_THROWS_AS(substitute(p, bad), Error);
}

TEST_CASE("ring axioms and degree additivity on random polynomials over F101") {
  auto r = testing_support::ring(Field::prime(101), "x y z");
  std::mt19937_64 rng(20261016);
  auto rand_poly = [&](int deg, bool homogeneous) {
    TermAccumulator acc(r);
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      int d = homogeneous ? deg : static_cast<int>(rng() % (deg + 1));
      std::vector<std::size_t> idx;
      for (int i = 0; i < d; ++i) idx.push_back(rng() % 3);
      acc.add(r->make_word(idx), r->field().from_int(static_cast<long long>(1 + rng() % 100)));
    }
    return acc.finish();
  };
  for (int trial = 0; trial < 100; ++trial) {
    NcPoly a = rand_poly(2, false), b = rand_poly(2, false), c = rand_poly(2, false);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
    NcPoly h1 = rand_poly(1 + trial % 3, true), h2 = rand_poly(1 + trial % 2, true);
    NcPoly prod = h1 * h2;
    if (!prod.is_zero()) CHECK(prod.homogeneous_degree() == *h1.homogeneous_degree() + *h2.homogeneous_degree());
  }
}

TEST_CASE("parser errors carry positions") {
  auto r = testing_support::ring(Field::rationals(), "x y");
  try {
    P(r, "x + ");
    FAIL("expected syntax error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Syntax);
    CHECK(std::string(e.what()).find("col") != std::string::npos);
  }
  CHECK_THROWS_AS(P(r, "x / y"), Error);
  CHECK_THROWS_AS(P(r, "x^-1"), Error);
  CHECK(P(r, "x/2 + 1/2*y") == P(r, "(x + y)/2"));
  CHECK(P(r, "2^-1*x") == P(r, "x/2"));
}
