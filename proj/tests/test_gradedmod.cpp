#include "doctest.h"
#include "ncmf/error.hpp"
#include "ncmf/gradedmod.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ncmf;
using testing_support::P;

namespace {

GradedMatrix mat(const AlgebraPtr& a, std::vector<int> src, std::vector<int> tgt, const std::vector<std::string>& e) {
  std::vector<NcPoly> entries;
  for (const auto& s : e) entries.push_back(P(a->ring(), s));
  return GradedMatrix(FreeModule(a, std::move(src)), FreeModule(a, std::move(tgt)), entries);
}

AlgebraPtr sklyanin_b() {
  auto r = testing_support::ring(Field::rationals(), "x y z");
  auto a = testing_support::algebra(r, {"y*z + z*y - x^2", "x*z + z*x - y^2", "x*y + y*x - z^2"}, 8);
  return quotient_by_element(*a, P(r, "2*(y^3 + x*y*z - y*x*z - x^3)"));
}

}  // namespace

TEST_CASE("homogeneity is enforced at construction") {
  auto r = testing_support::ring(Field::rationals(), "x y");
  auto a = testing_support::algebra(r, {"y*x - x*y"}, 6);
  CHECK_NOTHROW(mat(a, {2}, {0, 1}, {"x^2 + y^2", "x"}));
  try {
    mat(a, {2}, {0, 1}, {"x", "x"});
    FAIL("expected InhomogeneousEntry");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InhomogeneousEntry);
  }
  CHECK_THROWS_AS(mat(a, {1}, {0, 1}, {"x"}), Error);
}

TEST_CASE("composition follows the row-vector convention") {
  auto r = testing_support::ring(Field::rationals(), "x y");
  auto a = testing_support::algebra(r, {}, 6);
  GradedMatrix m1 = mat(a, {1}, {0}, {"x"});
  GradedMatrix m2 = mat(a, {2}, {1}, {"y"});
  // e -> y e' then e' -> x e'' gives y*x.
  CHECK(compose(m2, m1).at(0, 0) == P(r, "y*x"));
  CHECK(compose(GradedMatrix::identity(m2.source()), m2) == m2);
  CHECK(compose(m2, GradedMatrix::identity(m2.target())) == m2);
  CHECK_THROWS_AS(compose(m1, m2), Error);
}

TEST_CASE("twist and lambda naturality") {
  auto r = testing_support::ring(Field::prime(7), "x y w");
  auto a = testing_support::algebra(r, {"y*x - x*y", "w*x - x*w - y*w", "w*y - 2*y*w"}, 8);
  NormalityCertificate cert = normalizing_automorphism(a, P(r, "w^2"));
  const GradedEndo& sigma = cert.sigma;
  GradedMatrix phi = mat(a, {1, 1}, {0, 0}, {"w", "-x - y", "0", "w"});
  GradedMatrix tw = twist_map(phi, sigma, 2);
  // sigma^{-1} = zeta^2: zeta(x) = x + y, zeta^3(x) = x + 7y = x over F7.
  CHECK(tw.at(0, 1) == P(r, "-x"));
  CHECK(tw.source().degrees() == std::vector<int>{3, 3});
  CHECK(twist_map(tw, sigma, 2) == twist_power(phi, sigma, 2, 2));
  CHECK(twist_power(twist_power(phi, sigma, 2, 3), sigma, 2, -3) == phi);
  GradedMatrix lhs = compose(twist_map(phi, sigma, 2), lambda_f(phi.target(), cert.f, 2));
  GradedMatrix rhs = compose(lambda_f(phi.source(), cert.f, 2), phi);
  CHECK(lhs == rhs);
  GradedMatrix psi = mat(a, {0, 0}, {0}, {"1", "2"});
  CHECK(twist_map(compose(phi, psi), sigma, 2) == compose(twist_map(phi, sigma, 2), twist_map(psi, sigma, 2)));
}

TEST_CASE("kernels") {
  auto r = testing_support::ring(Field::rationals(), "x y");
  auto a = testing_support::algebra(r, {"y*x - x*y"}, 6);
  auto b = quotient_by_element(*a, P(r, "x^2"));
  GradedMatrix mx = mat(b, {1}, {0}, {"x"});
  GradedMatrix k = kernel_degreewise(mx, 5);
  REQUIRE(k.rows() == 1);
  CHECK(k.source().degrees() == std::vector<int>{2});
  CHECK(k.at(0, 0) == P(r, "x"));
  CHECK(!is_injective_up_to(mx, 5));
  CHECK(is_injective_up_to(mat(a, {1}, {0}, {"x"}), 5));

  GradedMatrix z = GradedMatrix::zero(FreeModule(b, {0, 1}), FreeModule(b, {0}));
  CHECK(kernel_degreewise(z, 4) == GradedMatrix::identity(z.source()));
}

TEST_CASE("sklyanin syzygies of the maximal ideal") {
  auto b = sklyanin_b();
  GradedMatrix m1 = mat(b, {1, 1, 1}, {0}, {"x", "y", "z"});
  GradedMatrix k = kernel_degreewise(m1, 6);
  CHECK(k.source().degrees() == std::vector<int>{2, 2, 2, 3});
  GradedMatrix m2 = mat(b, {2, 2, 2, 3}, {1, 1, 1},
                        {"-x", "z", "y", "z", "-y", "x", "y", "x", "-z", "-2*x^2", "2*y^2", "2*(x*y - y*x)"});
  CHECK(compose(m2, m1).is_zero());
  CHECK(same_row_span(k, m2, 7));
  CHECK(!k.has_scalar_entry());
}

TEST_CASE("kernel generators span every slice kernel") {
  auto b = sklyanin_b();
  GradedMatrix m = mat(b, {1, 2}, {0, 0}, {"x", "y", "x*y", "z^2"});
  GradedMatrix k = kernel_degreewise(m, 6);
  CHECK(compose(k, m).is_zero());
  for (int t = 1; t <= 6; ++t) {
    Matrix s = slice_matrix(m, t);
    auto dense = left_kernel(s);
    Echelon span = row_span_slice(k, t);
    CHECK(span.rows.size() == dense.size());
  }
}
