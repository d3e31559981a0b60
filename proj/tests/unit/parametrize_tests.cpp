#include <doctest.h>

#include <stdexcept>

#include "opgp/errors.hpp"
#include "opgp/orealg/parser.hpp"
#include "opgp/parametrize/parametrize.hpp"
#include "support/generators.hpp"
#include "support/reference_matrices.hpp"

using namespace opgp;
using namespace opgp::testing;

namespace {

bool columns_equal_up_to_sign(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const auto ca = a.column(j);
    const auto cb = b.column(j);
    bool same = true;
    bool negated = true;
    for (std::size_t i = 0; i < ca.size(); ++i) {
      same = same && ca[i] == cb[i];
      negated = negated && ca[i] == -cb[i];
    }
    if (!same && !negated) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("sphere system is controllable") {
  auto r = weyl_xyz();
  const auto res = parametrize(sphere_a(r));
  CHECK(res.controllable);
  CHECK(res.witness.rows() == 0);
  CHECK(mat_mul(sphere_a(r), res.B).is_zero());
  CHECK(column_module_equal(res.B, sphere_b(r)));
}

TEST_CASE("x over Q[x] is not controllable") {
  auto r = RingSpec::commutative({"x"});
  const auto res = parametrize(OperatorMatrix::parse(r, {{"x"}}));
  CHECK(res.B.cols() == 0);
  CHECK(res.Aprime == OperatorMatrix::parse(r, {{"1"}}));
  CHECK_FALSE(res.controllable);
  CHECK(res.witness.rows() == 1);
}

TEST_CASE("zero system gives identity") {
  auto r = weyl_xyz();
  const auto res = parametrize(OperatorMatrix(r, 1, 3));
  CHECK(res.B == OperatorMatrix::identity(r, 3));
  CHECK(res.controllable);
}

TEST_CASE("boundary parametrizations") {
  auto r = weyl_xy();
  const auto dirichlet = boundary_param(r, std::vector<OrePoly>{parse_operator("x*(x-1)*y*(y-1)", r)});
  CHECK(dirichlet == OperatorMatrix::parse(r, {{"x^2*y^2 - x^2*y - x*y^2 + x*y"}}));
  auto r3 = weyl_xyz();
  const auto axis = boundary_param(r3, std::vector<OrePoly>{parse_operator("x", r3), parse_operator("y", r3)});
  CHECK(axis == OperatorMatrix::parse(r3, {{"x", "y"}}));
  auto r1 = RingSpec::weyl({"x"});
  CHECK(boundary_param(r1, std::vector<OrePoly>{parse_operator("x^2", r1)}) == OperatorMatrix::parse(r1, {{"x^2"}}));
  const auto square = boundary_param(
      r, std::vector<std::vector<OrePoly>>{{parse_operator("(x-1)*x", r)}, {parse_operator("(y-1)*y", r)}});
  CHECK(square == square_b2(r));
  CHECK_THROWS_AS(boundary_param(r, std::vector<OrePoly>{parse_operator("x*Dx", r)}), std::invalid_argument);
}

TEST_CASE("curl and tangent fields intersect in the sphere parametrization") {
  auto r = weyl_xyz();
  const auto res = intersect(curl_b(r), tangent_b(r));
  CHECK(mat_mul(hstack(curl_b(r), tangent_b(r)), res.C).is_zero());
  CHECK(res.P == -mat_mul(tangent_b(r), res.C2));
  CHECK(res.C.rows() == 6);
  CHECK_FALSE(mat_mul(hstack(curl_b(r), tangent_b(r)), curl_tangent_c(r)).is_zero());
  CHECK(column_module_equal(res.C, curl_tangent_c_consistent(r)));
  CHECK(row_module_equal(syzygy_module(res.C), hstack(curl_b(r), tangent_b(r))));
  CHECK(res.extra_relations.rows() == 0);
  CHECK(column_module_equal(res.normalized_P, sphere_b(r)));
  CHECK(res.normalized_P.cols() == 1);
}

TEST_CASE("equator intersection reports the extra relation") {
  auto r = weyl_xyz();
  const auto b1 = equator_b1(r);
  const auto b2 = equator_b2(r);
  const auto res = intersect(b1, b2);
  CHECK(column_module_equal(res.C, equator_c(r)));
  REQUIRE(res.extra_relations.rows() == 1);
  const auto extra = OperatorMatrix::parse(r, {{"0", "x", "y", "z"}});
  const auto b = hstack(b1, b2);
  CHECK(row_module_equal(vstack(b, res.extra_relations), vstack(b, extra)));
  CHECK(mat_mul(res.extra_relations, res.C).is_zero());
  REQUIRE(res.normalized_P.cols() == 1);
  CHECK(columns_equal_up_to_sign(res.normalized_P, equator_p(r)));
}

TEST_CASE("square flow intersection") {
  auto r = weyl_xy();
  const auto res = intersect(square_b1(r), square_b2(r));
  CHECK(column_module_equal(res.C, square_c(r)));
  CHECK(columns_equal_up_to_sign(res.C1, OperatorMatrix::parse(r, {{"x^2*y^2 - x^2*y - x*y^2 + x*y"}})));
  CHECK(columns_equal_up_to_sign(res.normalized_P, square_p(r)));
}

TEST_CASE("self intersection keeps the column module") {
  auto r = weyl_xyz();
  const auto res = intersect(sphere_b(r), OperatorMatrix::identity(r, 3));
  CHECK(column_module_equal(res.normalized_P, sphere_b(r)));
  auto rs = weyl_xy();
  const auto sq = intersect(square_b1(rs), OperatorMatrix::identity(rs, 2));
  CHECK(column_module_equal(sq.normalized_P, square_b1(rs)));
}

TEST_CASE("intersect rejects mismatched inputs") {
  auto r = weyl_xyz();
  CHECK_THROWS_AS(intersect(sphere_b(r), OperatorMatrix::identity(r, 2)), DimensionMismatch);
  CHECK_THROWS_AS(intersect(sphere_b(r), OperatorMatrix::identity(weyl_xy(), 3)), RingMismatch);
}

TEST_CASE("verify parametrization") {
  auto r = weyl_xyz();
  const auto ok = verify_parametrization(sphere_a(r), sphere_b(r));
  CHECK(ok.passed());
  const auto bad = verify_parametrization(sphere_a(r), OperatorMatrix::identity(r, 3));
  CHECK_FALSE(bad.product_zero);
  const auto zero = verify_parametrization(OperatorMatrix(r, 1, 3), sphere_b(r));
  CHECK(zero.product_zero);
  CHECK(zero.a_residue.rows() == 0);
  const auto json = to_json(ok);
  CHECK(json["passed"] == true);
  CHECK(json["A_mod_Aprime"]["rows"] == 0);
  CHECK_THROWS_AS(verify_parametrization(sphere_a(r), square_b1(r)), DimensionMismatch);
}

TEST_CASE("normalize columns") {
  auto r = RingSpec::commutative({"x", "y"});
  const auto m = OperatorMatrix::parse(r, {{"0", "-x/2", "2*x"}, {"0", "y/3", "4"}});
  const auto n = normalize_columns(m);
  CHECK(n.cols() == 2);
  CHECK(column_module_equal(n, m));
  const auto single = OperatorMatrix::parse(r, {{"-x/2"}, {"y/3"}});
  CHECK(normalize_columns(single) == OperatorMatrix::parse(r, {{"3*x"}, {"-2*y"}}));
}

TEST_CASE("random intersections satisfy the product identities") {
  Rng rng(31);
  auto r = weyl_xy();
  for (int k = 0; k < 10; ++k) {
    const auto b1 = random_matrix(rng, r, 2, 1, 2, 1);
    const auto b2 = random_matrix(rng, r, 2, 2, 2, 1);
    const auto res = intersect(b1, b2);
    CHECK(mat_mul(hstack(b1, b2), res.C).is_zero());
    CHECK((mat_mul(b1, res.C1) + mat_mul(b2, res.C2)).is_zero());
    CHECK(mat_mul(res.extra_relations, res.C).is_zero());
  }
}
