#include <random>

#include "doctest.h"
#include "ncmf/autos.hpp"
#include "ncmf/error.hpp"
#include "support.hpp"

using namespace ncmf;
using testing_support::P;

namespace {

// k[x,y][w; zeta] with zeta(x) = x + y, zeta(y) = q y.
AlgebraPtr ore(const Field& k, long long q, int degree) {
  auto r = testing_support::ring(k, "x y w");
  std::string qs = std::to_string(q);
  return testing_support::algebra(r, {"y*x - x*y", "w*x - x*w - y*w", "w*y - " + qs + "*y*w"}, degree);
}

GradedEndo make(const AlgebraPtr& a, const std::vector<std::string>& imgs) {
  std::vector<NcPoly> v;
  for (const auto& s : imgs) v.push_back(P(a->ring(), s));
  return check_endo(a, v);
}

}  // namespace

TEST_CASE("identity endomorphism") {
  auto a = ore(Field::prime(7), 2, 6);
  GradedEndo id = make(a, {"x", "y", "w"});
  CHECK(id.is_identity());
  CHECK(endo_order(id, 5) == 1);
  CHECK(invert_endo(id) == id);
  NcPoly p = a->normal_form(P(a->ring(), "w*x*y + 3*y*w*w"));
  CHECK(apply_endo(id, p) == p);
}

TEST_CASE("ore automorphism, powers and inverse") {
  auto a = ore(Field::prime(7), 2, 6);
  const RingPtr& r = a->ring();
  GradedEndo zeta = make(a, {"x + y", "2*y", "w"});
  CHECK(compose_endo(zeta, zeta).image(0) == P(r, "x + 3*y"));
  CHECK(apply_endo(zeta, apply_endo(zeta, P(r, "x"))) == P(r, "x + 3*y"));
  GradedEndo inv = invert_endo(zeta);
  // q^{-1} = 4 in F7
  CHECK(inv.image(0) == P(r, "x - 4*y"));
  CHECK(inv.image(1) == P(r, "4*y"));
  CHECK(compose_endo(inv, zeta).is_identity());
  CHECK(endo_order(zeta, 10) == 3);
  CHECK(endo_power(zeta, -2) == compose_endo(inv, inv));
}

TEST_CASE("check_endo failures") {
  auto r = testing_support::ring(Field::rationals(), "x y");
  auto a = testing_support::algebra(r, {"y*x - x*y"}, 4);
  try {
    make(a, {"x", "x"});
    FAIL("expected NotInvertible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInvertible);
  }
  auto skew = testing_support::algebra(r, {"y*x - 2*x*y"}, 4);
  try {
    make(skew, {"y", "x"});
    FAIL("expected RelationNotPreserved");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RelationNotPreserved);
  }
  CHECK_THROWS_AS(make(a, {"x^2", "y"}), Error);
}

TEST_CASE("regularity") {
  auto r = testing_support::ring(Field::rationals(), "x y");
  auto comm = testing_support::algebra(r, {"y*x - x*y"}, 6);
  CHECK(is_regular(*comm, P(r, "x"), 5).regular);
  auto bad = testing_support::algebra(r, {"y^2", "y*x"}, 6);
  RegularityReport rep = is_regular(*bad, P(r, "y"), 4);
  CHECK(!rep.regular);
  CHECK(rep.failing_degree == 1);
  CHECK_THROWS_AS(is_regular(*comm, P(r, "x"), 6), Error);
}

TEST_CASE("normalizing automorphisms") {
  auto rs = testing_support::ring(Field::rationals(), "x y z");
  auto sk = testing_support::algebra(rs, {"y*z + z*y - x^2", "x*z + z*x - y^2", "x*y + y*x - z^2"}, 8);
  NormalityCertificate c = normalizing_automorphism(sk, P(rs, "2*(y^3 + x*y*z - y*x*z - x^3)"));
  CHECK(c.sigma.is_identity());
  CHECK(c.regularity_bound == 5);

  auto a = ore(Field::prime(7), 2, 8);
  GradedEndo zeta = make(a, {"x + y", "2*y", "w"});
  NormalityCertificate o = normalizing_automorphism(a, P(a->ring(), "w^2"));
  CHECK(o.sigma == endo_power(zeta, -2));
  CHECK(o.sigma.image(2) == P(a->ring(), "w"));
  CHECK(a->normal_form(o.sigma.apply(o.f) - o.f).is_zero());

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int deg = static_cast<int>(rng() % 6);
    const auto& words = a->basis_of_degree(deg);
    TermAccumulator acc(a->ring());
    for (const auto& w : words) acc.add(w, a->field().from_int(static_cast<long long>(rng() % 7)));
    NcPoly el = acc.finish();
    CHECK(a->multiply(el, o.f) == a->multiply(o.f, o.sigma.apply(el)));
  }

  auto r2 = testing_support::ring(Field::rationals(), "x y");
  auto free2 = testing_support::algebra(r2, {}, 5);
  try {
    normalizing_automorphism(free2, P(r2, "x^2"));
    FAIL("expected NotNormal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNormal);
  }
}

TEST_CASE("inverse round trips on random automorphisms") {
  auto r = testing_support::ring(Field::prime(101), "x y z");
  auto a = testing_support::algebra(r, {"y*x - x*y", "z*x - x*z", "z*y - y*z"}, 4);
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto rand_lin = [&] {
      TermAccumulator acc(r);
      for (std::size_t i = 0; i < 3; ++i) acc.add(r->generator_word(i), r->field().from_int(static_cast<long long>(rng() % 101)));
      return acc.finish();
    };
    std::vector<NcPoly> i1 = {rand_lin(), rand_lin(), rand_lin()}, i2 = {rand_lin(), rand_lin(), rand_lin()};
    try {
      GradedEndo e1 = check_endo(a, i1), e2 = check_endo(a, i2);
      GradedEndo c = compose_endo(e1, e2);
      CHECK(compose_endo(invert_endo(c), c).is_identity());
      CHECK(compose_endo(c, invert_endo(c)).is_identity());
      CHECK(invert_endo(c) == compose_endo(invert_endo(e2), invert_endo(e1)));
      ++checked;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotInvertible);
    }
  }
  CHECK(checked > 20);
}
