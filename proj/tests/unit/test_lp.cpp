#include <doctest.h>

#include <random>

#include "reference.hpp"
#include "reflekt/errors.hpp"
#include "reflekt/lp.hpp"

using namespace reflekt;
using reftest::ints;

namespace {

HPolyhedron unit_square() { return HPolyhedron::box(2, Scalar(0), Scalar(1)); }

// max <c, x> s.t. A x <= b  vs  min <b, y> s.t. A^T y = c, y >= 0.
void check_duality(const HPolyhedron& primal, const Vector& c) {
  const std::size_t m = primal.num_inequalities();
  HPolyhedron dual(m, Backend::rational);
  for (std::size_t j = 0; j < primal.dim(); ++j) {
    Vector row;
    for (std::size_t i = 0; i < m; ++i) row.push_back(primal.inequalities()[i].coeffs[j]);
    dual.add_equation(row, c[j]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    Vector row = zeros(m, Backend::rational);
    row[i] = Scalar(-1);
    dual.add_inequality(row, Scalar(0));
  }
  Vector b;
  for (const auto& row : primal.inequalities()) b.push_back(row.rhs);
  auto p = lp::optimize(primal, c, lp::Sense::maximize);
  auto d = lp::optimize(dual, b, lp::Sense::minimize);
  REQUIRE(p.status == lp::Status::optimal);
  REQUIRE(d.status == lp::Status::optimal);
  CHECK(*p.value == *d.value);
  CHECK(primal.contains(p.point));
  CHECK(dual.contains(d.point));
}

}  // namespace

TEST_SUITE("lp") {
  TEST_CASE("max x1 + x2 over the unit square") {
    auto r = lp::optimize(unit_square(), ints({1, 1}), lp::Sense::maximize);
    REQUIRE(r.status == lp::Status::optimal);
    CHECK(*r.value == Scalar(2));
    CHECK(r.point == ints({1, 1}));
  }

  TEST_CASE("unbounded and infeasible") {
    HPolyhedron half(1, Backend::rational);
    half.add_inequality(ints({-1}), Scalar(0));
    CHECK(lp::optimize(half, ints({1}), lp::Sense::maximize).status == lp::Status::unbounded);

    HPolyhedron empty(1, Backend::rational);
    empty.add_inequality(ints({1}), Scalar(-1));
    empty.add_inequality(ints({-1}), Scalar(0));
    CHECK(lp::optimize(empty, ints({0}), lp::Sense::maximize).status == lp::Status::infeasible);
  }

  TEST_CASE("free variables reach negative optima") {
    HPolyhedron p(2, Backend::rational);
    p.add_inequality(ints({1, 0}), Scalar(-3));
    p.add_inequality(ints({-1, 0}), Scalar(5));
    p.add_equation(ints({1, 1}), Scalar(0));
    auto r = lp::optimize(p, ints({0, -1}), lp::Sense::minimize);
    REQUIRE(r.status == lp::Status::optimal);
    CHECK(*r.value == Scalar(-5));
    CHECK(r.point == ints({-5, 5}));
  }

  TEST_CASE("pinned feasibility") {
    const lp::Pin half{0, Scalar::fraction(1, 2, Backend::rational)};
    const lp::Pin two{0, Scalar(2)};
    CHECK(lp::feasible(unit_square(), std::span(&half, 1)));
    CHECK_FALSE(lp::feasible(unit_square(), std::span(&two, 1)));
  }

  TEST_CASE("convex hull membership") {
    VPolytope tri(2, {ints({0, 0}), ints({1, 0}), ints({0, 1})});
    Vector mid{Scalar::fraction(1, 2, Backend::rational), Scalar::fraction(1, 2, Backend::rational)};
    CHECK(lp::in_hull(mid, tri));
    CHECK_FALSE(lp::in_hull(ints({1, 1}), tri));

    std::vector<Vector> perms;
    for (const auto& p : reftest::permutations({1, 2, 3})) perms.push_back(ints(p));
    CHECK(lp::in_hull(ints({2, 2, 2}), VPolytope(3, perms)));
    CHECK_FALSE(lp::in_hull(ints({1, 1, 4}), VPolytope(3, perms)));
  }

  TEST_CASE("strong duality on random bounded programs") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + trial % 3;
      HPolyhedron p = HPolyhedron::box(n, Scalar(-4), Scalar(4));
      for (int k = 0; k < 4; ++k) {
        Vector row;
        for (std::size_t j = 0; j < n; ++j) row.push_back(Scalar(d(rng)));
        p.add_inequality(row, Scalar(std::abs(d(rng)) + 1));
      }
      Vector c;
      for (std::size_t j = 0; j < n; ++j) c.push_back(Scalar(d(rng)));
      check_duality(p, c);
    }
  }

  TEST_CASE("degenerate vertex does not cycle") {
    // Many constraints tight at the origin.
    HPolyhedron p(3, Backend::rational);
    p.add_inequality(ints({1, 1, 1}), Scalar(0));
    p.add_inequality(ints({1, -1, 0}), Scalar(0));
    p.add_inequality(ints({0, 1, -1}), Scalar(0));
    p.add_inequality(ints({-1, 0, 1}), Scalar(0));
    p.add_inequality(ints({1, 2, -3}), Scalar(0));
    p.add_inequality(ints({-1, -1, -1}), Scalar(3));
    auto r = lp::optimize(p, ints({-1, -1, -1}), lp::Sense::maximize);
    REQUIRE(r.status == lp::Status::optimal);
    CHECK(*r.value == Scalar(3));
  }

  TEST_CASE("float mode agrees with rational mode") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int trial = 0; trial < 20; ++trial) {
      HPolyhedron q = HPolyhedron::box(3, Scalar(-2), Scalar(3));
      HPolyhedron f = HPolyhedron::box(3, Scalar::from_double(-2), Scalar::from_double(3));
      for (int k = 0; k < 3; ++k) {
        Vector row;
        for (int j = 0; j < 3; ++j) row.push_back(Scalar(d(rng)));
        const Scalar rhs(std::abs(d(rng)) + 1);
        q.add_inequality(row, rhs);
        f.add_inequality(convert(row, Backend::floating), rhs.convert(Backend::floating));
      }
      Vector c{Scalar(d(rng)), Scalar(d(rng)), Scalar(d(rng))};
      auto rq = lp::optimize(q, c, lp::Sense::maximize);
      auto rf = lp::optimize(f, convert(c, Backend::floating), lp::Sense::maximize);
      REQUIRE(rq.status == lp::Status::optimal);
      REQUIRE(rf.status == lp::Status::optimal);
      CHECK(rf.value->to_double() == doctest::Approx(rq.value->to_double()).epsilon(1e-9));
    }
  }

  TEST_CASE("objective dimension is checked") {
    CHECK_THROWS_AS(lp::optimize(unit_square(), ints({1}), lp::Sense::maximize), DimensionError);
  }
}
