#include <doctest.h>

#include "opgp/errors.hpp"
#include "opgp/orealg/operator_matrix.hpp"
#include "opgp/orealg/parser.hpp"
#include "support/generators.hpp"

using namespace opgp;

namespace {

RingPtr weyl3() { return RingSpec::weyl({"x", "y", "z"}); }

OrePoly P(const RingPtr& r, const char* s) { return parse_operator(s, r); }

}  // namespace

TEST_CASE("ring spec validation") {
  CHECK_THROWS(RingSpec::commutative({}));
  CHECK_THROWS(RingSpec::commutative({"x", "x"}));
  CHECK_THROWS(RingSpec::weyl({"x", "y"}, {"Dx"}));
  CHECK_THROWS(RingSpec::weyl({"x"}, {"x"}));
  auto r = weyl3();
  CHECK(r->dimension() == 3);
  CHECK(r->num_generators() == 6);
  CHECK(r->name(4) == "Dy");
  CHECK(*r->index_of("Dz") == 5);
}

TEST_CASE("parse simple expressions") {
  auto r = weyl3();
  CHECK(P(r, "x").to_string() == "1*x");
  const auto p = P(r, "y*Dz - z*Dy");
  CHECK(p.size() == 2);
  CHECK(p.to_string() == "-1*z*Dy + 1*y*Dz");
  CHECK(P(r, "Dx*x") == P(r, "x*Dx + 1"));
  CHECK(P(r, "2^3") == OrePoly::constant(r, 8));
  CHECK(P(r, "-x^2") == -P(r, "x*x"));
  CHECK(P(r, "x/2 + 1/3") == P(r, "(3*x + 2)/6"));
  CHECK(P(r, "x^2^2") == P(r, "x^4"));
  CHECK(P(r, "0").is_zero());
  CHECK(P(r, "-(x+y)") == P(r, "-x-y"));
}

TEST_CASE("parse errors carry positions") {
  auto r = weyl3();
  try {
    (void)P(r, "x + w");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(P(r, "(x+y)^2"), ParseError);
  CHECK_THROWS_AS(P(r, "x^-1"), ParseError);
  CHECK_THROWS_AS(P(r, "x^y"), ParseError);
  CHECK_THROWS_AS(P(r, "x/y"), ParseError);
  CHECK_THROWS_AS(P(r, "x/0"), ParseError);
  CHECK_THROWS_AS(P(r, "x +"), ParseError);
  CHECK_THROWS_AS(P(r, "(x"), ParseError);
  CHECK_THROWS_AS(P(r, "x y"), ParseError);
  CHECK_THROWS_AS(P(r, ""), ParseError);
  CHECK_THROWS_AS(P(r, "x $ y"), ParseError);
}

TEST_CASE("Weyl products") {
  auto r = weyl3();
  CHECK(mul(P(r, "Dx"), P(r, "x^2")) == P(r, "x^2*Dx + 2*x"));
  CHECK(mul(P(r, "x*Dy"), P(r, "y*Dx")) == P(r, "x*y*Dx*Dy + x*Dx"));
  auto c = RingSpec::commutative({"x", "y"});
  CHECK(mul(P(c, "x"), P(c, "y")).to_string() == "1*x*y");
  CHECK_THROWS_AS(mul(P(c, "x"), P(r, "x")), RingMismatch);
}

TEST_CASE("(x Dy)(y Dx) acts like composition on x^2 y^2") {
  auto r = weyl3();
  const auto f = P(r, "x^2*y^2");
  const auto lhs = apply_operator(mul(P(r, "x*Dy"), P(r, "y*Dx")), f);
  const auto rhs = apply_operator(P(r, "x*Dy"), apply_operator(P(r, "y*Dx"), f));
  CHECK(lhs == rhs);
  CHECK(lhs == P(r, "6*x^2*y^2"));
}

TEST_CASE("involution") {
  auto r = weyl3();
  OperatorMatrix m(r, 1, 1);
  m(0, 0) = P(r, "Dx");
  CHECK(involution(m)(0, 0) == P(r, "-Dx"));
  m(0, 0) = P(r, "x*Dx");
  CHECK(involution(m)(0, 0) == P(r, "-x*Dx - 1"));
  auto c = RingSpec::commutative({"x", "y"});
  auto mc = OperatorMatrix::parse(c, {{"x", "y"}, {"1", "x*y"}});
  CHECK(involution(mc) == mc.transpose());
}

TEST_CASE("matrix basics") {
  auto r = weyl3();
  auto m = OperatorMatrix::parse(r, {{"x", "y", "z"}, {"Dx", "Dy", "Dz"}});
  CHECK(mat_mul(OperatorMatrix::identity(r, 2), m) == m);
  CHECK(m.to_string() == "[[1*x, 1*y, 1*z], [1*Dx, 1*Dy, 1*Dz]]");
  CHECK_THROWS_AS(mat_mul(m, m), DimensionMismatch);
  auto b = OperatorMatrix::parse(r, {{"-z*Dy + y*Dz"}, {"z*Dx - x*Dz"}, {"-y*Dx + x*Dy"}});
  CHECK(mat_mul(m, b).is_zero());
  CHECK(hstack(m, m).cols() == 6);
  CHECK(vstack(m, m).rows() == 4);
  OperatorMatrix empty(r, 3, 0);
  CHECK(mat_mul(m, empty).cols() == 0);
}

TEST_CASE("print/parse fixed point on random elements") {
  testing::Rng rng(11);
  auto r = weyl3();
  for (int k = 0; k < 200; ++k) {
    const auto p = testing::random_poly(rng, r);
    const auto q = P(r, p.to_string().c_str());
    CHECK(q == p);
    CHECK(q.to_string() == p.to_string());
  }
}

TEST_CASE("ring axioms on random elements") {
  testing::Rng rng(12);
  for (auto ring : {weyl3(), RingSpec::commutative({"x", "y", "z"}), RingSpec::weyl({"t"})}) {
    const auto one = OrePoly::constant(ring, 1);
    for (int k = 0; k < 100; ++k) {
      const auto a = testing::random_poly(rng, ring);
      const auto b = testing::random_poly(rng, ring);
      const auto c = testing::random_poly(rng, ring);
      CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
      CHECK(mul(a, b + c) == mul(a, b) + mul(a, c));
      CHECK(mul(a + b, c) == mul(a, c) + mul(b, c));
      CHECK(mul(one, a) == a);
      CHECK(mul(a, one) == a);
      if (!ring->is_weyl()) CHECK(mul(a, b) == mul(b, a));
    }
  }
}

TEST_CASE("Weyl relation for all generator pairs") {
  for (std::size_t d = 1; d <= 3; ++d) {
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < d; ++i) vars.push_back("v" + std::to_string(i));
    auto ring = RingSpec::weyl(vars);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const auto di = OrePoly::generator(ring, d + i);
        const auto xj = OrePoly::generator(ring, j);
        const auto comm = mul(di, xj) - mul(xj, di);
        CHECK(comm == OrePoly::constant(ring, i == j ? 1 : 0));
      }
    }
  }
}

TEST_CASE("operational faithfulness") {
  testing::Rng rng(13);
  auto r = weyl3();
  for (int k = 0; k < 100; ++k) {
    const auto p = testing::random_poly(rng, r);
    const auto q = testing::random_poly(rng, r);
    const auto f = testing::random_function(rng, r);
    CHECK(apply_operator(mul(p, q), f) == apply_operator(p, apply_operator(q, f)));
  }
}

TEST_CASE("involution is a self-inverse anti-homomorphism") {
  testing::Rng rng(14);
  auto r = weyl3();
  for (int k = 0; k < 40; ++k) {
    const auto m = testing::random_matrix(rng, r, 2, 3);
    const auto n = testing::random_matrix(rng, r, 3, 2);
    CHECK(involution(involution(m)) == m);
    CHECK(involution(mat_mul(m, n)) == mat_mul(involution(n), involution(m)));
  }
}

TEST_CASE("evaluate and substitute") {
  auto c = RingSpec::commutative({"x", "y"});
  const auto f = P(c, "x^2*y - 3*y + 1/2");
  const double pt[] = {2.0, -1.0};
  CHECK(evaluate(f, pt) == doctest::Approx(-4 + 3 + 0.5));
  CHECK(substitute(f, 0, 2) == P(c, "y + 1/2"));
}
