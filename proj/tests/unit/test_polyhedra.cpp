#include <doctest.h>

#include "reference.hpp"
#include "reflekt/constructions.hpp"
#include "reflekt/errors.hpp"
#include "reflekt/lp.hpp"
#include "reflekt/polyhedra.hpp"
#include "reflekt/reflections.hpp"

using namespace reflekt;
using reftest::ints;

namespace {

HPolyhedron interval(long lo, long hi) { return HPolyhedron::box(1, Scalar(lo), Scalar(hi)); }

// conv{(0,0), (1,1), (2,0)} in R^1 x R^1 through its three facets.
PolyhedralRelation tent() {
  PolyhedralRelation r;
  r.n = 1;
  r.m = 1;
  r.body = HPolyhedron(2, Backend::rational);
  r.body.add_inequality(ints({0, -1}), Scalar(0));
  r.body.add_inequality(ints({-1, 1}), Scalar(0));
  r.body.add_inequality(ints({1, 1}), Scalar(2));
  r.label = "tent";
  return r;
}

Scalar max_over(const ExtendedFormulation& ef, const Vector& c, lp::Sense sense = lp::Sense::maximize) {
  auto r = lp::optimize(ef.q, ef.projection.linear().transpose() * c, sense);
  REQUIRE(r.status == lp::Status::optimal);
  return *r.value + dot(c, ef.projection.offset());
}

}  // namespace

TEST_SUITE("polyhedra") {
  TEST_CASE("graph relations") {
    auto id = graph_relation(AffineMap::identity(2, Backend::rational));
    CHECK(id.n == 2);
    CHECK(id.m == 2);
    auto d = deltas(id);
    CHECK(d.delta1 == 0);
    CHECK(d.delta2 == 0);

    // Constant map R^3 -> R^2.
    auto c = graph_relation(AffineMap(Matrix(2, 3, Backend::rational), ints({4, 5})));
    auto dc = deltas(c);
    CHECK(dc.delta1 == 0);
    CHECK(dc.delta2 == 3);
  }

  TEST_CASE("completion-time map for two jobs") {
    auto chain = completion_time_chain(ints({1, 2}));
    REQUIRE(chain.relations.size() == 2);
    const auto& f = chain.relations[1];
    CHECK(f.n == 2);
    CHECK(f.m == 2);
    // x = (p_1, u) = (1, 0): job 1 first.
    auto fiber = f.fiber(ints({1, 0}));
    CHECK(fiber.contains(ints({1, 3})));
    CHECK_FALSE(fiber.contains(ints({3, 2})));
  }

  TEST_CASE("huffman embedding") {
    CHECK(huffman_embedding(4).apply(ints({1, 2, 2})) == ints({1, 2, 3, 3}));
    CHECK(huffman_contraction(4).apply(ints({1, 2, 3, 3})) == ints({1, 2, 2}));
  }

  TEST_CASE("identity chain over an interval") {
    auto ef = compose_extension(interval(0, 1), {graph_relation(AffineMap::identity(1, Backend::rational))});
    CHECK(ef.q.dim() == 2);
    CHECK(ef.blocks == std::vector<std::size_t>{1, 1});
    CHECK(max_over(ef, ints({1})) == Scalar(1));
    CHECK(max_over(ef, ints({1}), lp::Sense::minimize) == Scalar(0));
    auto red = eliminate_equations(ef);
    CHECK(red.q.dim() == 1);
    CHECK(red.q.num_inequalities() == 2);
    CHECK(red.ledger.reduced_variables == 1);
  }

  TEST_CASE("image of conv{0,2} under the tent relation is [0,1]") {
    auto ef = compose_extension(interval(0, 2), {tent()});
    CHECK(max_over(ef, ints({1})) == Scalar(1));
    CHECK(max_over(ef, ints({1}), lp::Sense::minimize) == Scalar(0));
    // The images of the two endpoints alone are both {0}.
    for (long x : {0L, 2L}) {
      auto pt = compose_extension(HPolyhedron::point(ints({x})), {tent()});
      CHECK(max_over(pt, ints({1})) == Scalar(0));
    }
  }

  TEST_CASE("ledger of three reflections over a point") {
    std::vector<PolyhedralRelation> rels;
    for (int j = 0; j < 3; ++j) rels.push_back(reflection_relation(i2_spec((1 << j) * 3.141592653589793 / 8)));
    auto ef = compose_extension(HPolyhedron::point({Scalar::from_double(1), Scalar::from_double(0)}), rels);
    CHECK(ef.ledger.inequalities == 6);
    CHECK(ef.ledger.relations == 3);
    CHECK(ef.ledger.raw_variables == 8);
    CHECK(ef.ledger.equations == 2 + 3);
  }

  TEST_CASE("type and backend checks") {
    auto t = transposition_relation(1, 2, 2);
    CHECK_THROWS_AS(compose_extension(interval(0, 1), {t}), TypeChainMismatch);
    auto f = reflection_relation(i2_spec(0.5));
    CHECK_THROWS_AS(compose_extension(HPolyhedron::point(ints({1, 0})), {f}), BackendMismatch);
  }

  TEST_CASE("empty relation body is rejected") {
    PolyhedralRelation r = tent();
    r.body.add_inequality(ints({0, 1}), Scalar(-1));
    CHECK_THROWS_AS(compose_extension(interval(0, 2), {r}), EmptyPolyhedron);
  }

  TEST_CASE("inconsistent equations are reported") {
    HPolyhedron p(1, Backend::rational);
    p.add_equation(ints({1}), Scalar(0));
    p.add_equation(ints({1}), Scalar(1));
    auto ef = compose_extension(p, {}, {.check_nonempty = false});
    CHECK_THROWS_AS(eliminate_equations(ef), EmptyPolyhedron);
  }

  TEST_CASE("projection membership on the 3-permutahedron") {
    auto ef = a_permutahedron_ef(HPolyhedron::point(ints({1, 2, 3})), batcher(3));
    CHECK(point_in_projection(ef, ints({2, 1, 3})));
    CHECK_FALSE(point_in_projection(ef, ints({1, 1, 4})));
    CHECK(point_in_projection(ef, ints({2, 2, 2})));
    auto base = compose_extension(HPolyhedron::point(ints({1, 2, 3})), {});
    CHECK(point_in_projection(base, ints({1, 2, 3})));
  }

  TEST_CASE("pinned LP through the projection") {
    auto ef = a_permutahedron_ef(HPolyhedron::point(ints({1, 2, 3})), batcher(3));
    auto red = eliminate_equations(ef);
    CHECK(point_in_projection(red, ints({3, 2, 1})));
    CHECK(red.ledger.reduced_variables <= red.ledger.reduced_variable_bound);
  }

  TEST_CASE("segment and simplex constructors") {
    auto s = HPolyhedron::segment(ints({0, 0}), ints({2, 2}));
    CHECK(s.num_inequalities() == 2);
    CHECK(s.num_equations() == 1);
    CHECK(s.contains(ints({1, 1})));
    CHECK_FALSE(s.contains(ints({3, 3})));
    CHECK_FALSE(s.contains(ints({1, 0})));
    auto simplex = HPolyhedron::standard_simplex(3);
    CHECK(simplex.num_inequalities() == 3);
    CHECK(simplex.contains(ints({0, 1, 0})));
    CHECK_FALSE(simplex.contains(ints({1, 1, 0})));
  }
}
