#include <doctest.h>

#include "instances.hpp"
#include "ncmf/error.hpp"
#include "ncmf/resolve.hpp"

using namespace ncmf;
using instances::mat;
using testing_support::P;

TEST_CASE("minimize eliminates unit relations and redundant rows") {
  auto r = testing_support::ring(Field::prime(101), "x y");
  auto a = testing_support::algebra(r, {"y*x - x*y"}, 6);
  // e1 = -x e2 by the first relation; what remains is coker(x^2, y*x) on e2.
  GradedMatrix rel = mat(a, {1, 2, 2, 2}, {1, 0},
                         {"1", "x", "0", "x^2", "x", "x*y", "y", "y*x"});
  ModulePresentation m = minimize(ModulePresentation{rel});
  CHECK(m.generators().degrees() == std::vector<int>{0});
  CHECK(m.relations.rows() == 2);
  for (std::size_t i = 0; i < m.relations.rows(); ++i) CHECK_FALSE(m.relations.at(i, 0).is_zero());
}

TEST_CASE("Sklyanin resolution of k has period 2 with shift 3") {
  auto s = instances::sklyanin(10);
  const AlgebraPtr& b = s.g->quotient();
  MinimalResolution res = minimal_resolution(instances::residue_field(b), 6, 10);
  std::vector<std::vector<int>> expect = {{0}, {1, 1, 1}, {2, 2, 2, 3}, {3, 4, 4, 4}, {5, 5, 5, 6}, {6, 7, 7, 7}, {8, 8, 8, 9}};
  CHECK(res.betti.steps == expect);
  CHECK_FALSE(res.terminated);
  CHECK(certify_exactness(res.segment, 10));
  CHECK(same_row_span(res.segment.differentials[1], s.m2, 10));

  PipelineResult pipe = factorization_pipeline(instances::residue_field(b), s.g, 3, 10);
  CHECK(pipe.syzygy_index == 2);
  CHECK_FALSE(pipe.finite_resolution);
  CHECK(pipe.splice_verified);
  CHECK(is_reduced(pipe.factorization));
  auto per = detect_period(pipe.factorization, 4);
  REQUIRE(per);
  CHECK(per->steps == 2);
  CHECK(per->shift == 3);
}

TEST_CASE("Heisenberg quotient resolves k by the Koszul complex") {
  auto h = instances::heisenberg(Field::prime(32003), 8);
  const AlgebraPtr& b = h.f->quotient();
  CHECK(hilbert_function(*b, 4) == std::vector<int>{1, 4, 10, 20, 35});
  MinimalResolution res = minimal_resolution(instances::residue_field(b), 5, 8);
  CHECK(res.betti.ranks() == std::vector<int>{1, 4, 6, 4, 1, 0});
  CHECK(res.terminated);
  CHECK(res.betti.steps[2] == std::vector<int>(6, 2));
  CHECK(res.betti.steps[4] == std::vector<int>{4});

  PipelineResult pipe = factorization_pipeline(instances::residue_field(b), h.f, 5, 8);
  CHECK(pipe.finite_resolution);
  CHECK(pipe.syzygy_index == 4);
  CHECK(pipe.factorization.rank() == 0);
}

TEST_CASE("extract_tmf recovers a factorization from its cokernel") {
  auto o = instances::ore(Field::prime(7), 2, 10);
  Factorization back = extract_tmf(coker_presentation(o.t), o.f, 8);
  CHECK(back.rank() == 2);
  CHECK(find_isomorphism(back, o.t).has_value());

  auto s = instances::sklyanin(9);
  Factorization sk = extract_tmf(coker_presentation(s.t), s.g, 8);
  CHECK(find_isomorphism(sk, s.t).has_value());
}

TEST_CASE("extract_tmf rejects free summands and large projective dimension") {
  auto s = instances::sklyanin(8);
  const AlgebraPtr& b = s.g->quotient();
  CHECK_THROWS_AS(extract_tmf(instances::residue_field(b), s.g, 7), Error);
  try {
    extract_tmf(instances::residue_field(b), s.g, 7);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PdTooLarge);
  }
  GradedMatrix with_free = mat(b, {1, 1, 1}, {0, 0}, {"x", "0", "y", "0", "z", "0"});
  try {
    extract_tmf(ModulePresentation{with_free}, s.g, 7);
    FAIL("expected a free summand error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FreeSummandPresent);
  }
  StripResult st = strip_free_summands(ModulePresentation{with_free});
  CHECK(st.stripped == 1);
  CHECK(st.module.generators().rank() == 1);
}

TEST_CASE("lift_to_ambient appends f times each generator") {
  auto s = instances::sklyanin(8);
  ModulePresentation lifted = lift_to_ambient(ModulePresentation{s.m1}, *s.g);
  CHECK(lifted.relations.rows() == 4);
  CHECK(lifted.relations.source().degrees() == std::vector<int>{1, 1, 1, 3});
  CHECK(lifted.algebra() == s.a);
}
