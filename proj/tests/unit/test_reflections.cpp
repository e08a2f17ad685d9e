#include <doctest.h>

#include <random>

#include "reference.hpp"
#include "reflekt/errors.hpp"
#include "reflekt/lp.hpp"
#include "reflekt/reflections.hpp"
#include "reflekt/verify.hpp"

using namespace reflekt;
using reftest::ints;

namespace {

ReflectionSpec spec(const std::vector<long>& a, long beta) { return {ints(a), Scalar(beta)}; }

ReflectionSpec random_spec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> d(-4, 4);
  for (;;) {
    ReflectionSpec s{{}, Scalar(d(rng))};
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      s.normal.push_back(Scalar(d(rng)));
      nonzero = nonzero || s.normal.back().sign() != 0;
    }
    if (nonzero) return s;
  }
}

// Extreme points of a 1-dimensional fiber, by optimizing along `dir`.
std::pair<Vector, Vector> fiber_ends(const HPolyhedron& fiber, const Vector& dir) {
  auto hi = lp::optimize(fiber, dir, lp::Sense::maximize);
  auto lo = lp::optimize(fiber, dir, lp::Sense::minimize);
  REQUIRE(hi.status == lp::Status::optimal);
  REQUIRE(lo.status == lp::Status::optimal);
  return {lo.point, hi.point};
}

}  // namespace

TEST_SUITE("reflections") {
  TEST_CASE("reflect_point examples") {
    CHECK(reflect_point(spec({1, 0}, 1), ints({3, 5})) == ints({-1, 5}));
    CHECK(reflect_point(spec({1, 0}, 1), ints({1, 9})) == ints({1, 9}));
    CHECK(reflect_point(spec({1, -1}, 0), ints({2, 5})) == ints({5, 2}));
    CHECK_THROWS_AS(reflect_point(spec({0, 0}, 0), ints({1, 1})), InvalidArgument);
  }

  TEST_CASE("reflection is an exact involution") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> d(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + trial % 5;
      auto s = random_spec(rng, n);
      Vector x;
      for (std::size_t i = 0; i < n; ++i) x.push_back(Scalar::fraction(d(rng), 1 + trial % 3, Backend::rational));
      CHECK(reflect_point(s, reflect_point(s, x)) == x);
    }
  }

  TEST_CASE("canonical preimage examples") {
    CHECK(canonical_preimage(spec({-1, 0}, 0), ints({-2, 7})) == ints({2, 7}));
    CHECK(canonical_preimage(spec({-1, 0}, 0), ints({2, 7})) == ints({2, 7}));
    CHECK(canonical_preimage(transposition_spec(1, 2, 2), ints({5, 3})) == ints({3, 5}));
    CHECK(canonical_preimage(sign_spec(1, 2), ints({-4, 2})) == ints({4, 2}));
    CHECK(canonical_preimage(transposition_spec(1, 2, 2), ints({7, 4})) == ints({4, 7}));
  }

  TEST_CASE("fibers outside the domain are empty") {
    auto r = reflection_relation(spec({1, 0}, 0));
    CHECK_FALSE(lp::feasible(r.fiber(ints({1, 0}))));
    CHECK(lp::feasible(r.fiber(ints({-1, 0}))));
  }

  TEST_CASE("sign relation fibers") {
    auto s = sign_relation(1, 2);
    CHECK(s.label == "S1");
    // Over (1,5): conv{(1,5), (-1,5)}.
    auto [lo, hi] = fiber_ends(s.fiber(ints({1, 5})), ints({1, 0}));
    CHECK(lo == ints({-1, 5}));
    CHECK(hi == ints({1, 5}));
    auto [a, b] = fiber_ends(s.fiber(ints({0, 3})), ints({1, 0}));
    CHECK(a == ints({0, 3}));
    CHECK(b == ints({0, 3}));
  }

  TEST_CASE("transposition relation fibers") {
    auto t = transposition_relation(1, 2, 2);
    auto [lo, hi] = fiber_ends(t.fiber(ints({1, 3})), ints({1, 0}));
    CHECK(lo == ints({1, 3}));
    CHECK(hi == ints({3, 1}));
    auto [a, b] = fiber_ends(t.fiber(ints({2, 2})), ints({1, 0}));
    CHECK(a == ints({2, 2}));
    CHECK(b == ints({2, 2}));
  }

  TEST_CASE("even sign pair preimage") {
    auto [first, second] = even_sign_pair(1, 2, 2);
    std::vector<PolyhedralRelation> chain{first, second};
    CHECK(apply_preimage_chain(std::span<const PolyhedralRelation>(chain), ints({1, -2})) == ints({-1, 2}));
    CHECK(apply_preimage_chain(std::span<const PolyhedralRelation>(chain), ints({1, 2})) == ints({1, 2}));
  }

  TEST_CASE("preimage chains") {
    std::vector<ReflectionSpec> signs;
    for (std::size_t k = 1; k <= 3; ++k) signs.push_back(sign_spec(k, 3));
    CHECK(apply_preimage_chain(signs, ints({-1, 2, -3})) == ints({1, 2, 3}));
    CHECK(apply_preimage_chain(std::span<const ReflectionSpec>(), ints({4, 5})) == ints({4, 5}));
    std::vector<ReflectionSpec> sorting;
    for (const auto& c : batcher(3).as(SeqOrder::relation).comparators) {
      sorting.push_back(transposition_spec(c.k, c.l, 3));
    }
    CHECK(apply_preimage_chain(sorting, ints({3, 1, 2})) == ints({1, 2, 3}));
  }

  TEST_CASE("canonical forms") {
    CHECK(sort_vec(ints({3, 1, 2})) == ints({1, 2, 3}));
    CHECK(sortabs_vec(ints({-3, 1, -2})) == ints({1, 2, 3}));
    CHECK(dn_canonical(ints({-3, 1, -2})) == ints({1, 2, 3}));
    CHECK(dn_canonical(ints({3, 1, -2})) == ints({-1, 2, 3}));
  }

  TEST_CASE("both fiber dimensions are one for random reflections") {
    std::mt19937_64 rng(50);
    for (int trial = 0; trial < 50; ++trial) {
      auto r = reflection_relation(random_spec(rng, 2 + trial % 4));
      auto d = deltas(r);
      CHECK(d.delta1 == 1);
      CHECK(d.delta2 == 1);
    }
  }

  TEST_CASE("reflection fibers are spanned by identity and reflection") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 25; ++trial) {
      auto r = reflection_relation(random_spec(rng, 2 + trial % 3));
      CHECK(check_affine_generators(r, 4, 100 + trial));
    }
  }

  TEST_CASE("tent relation is not generated by the identity") {
    PolyhedralRelation r;
    r.n = 1;
    r.m = 1;
    r.body = HPolyhedron(2, Backend::rational);
    r.body.add_inequality(ints({0, -1}), Scalar(0));
    r.body.add_inequality(ints({-1, 1}), Scalar(0));
    r.body.add_inequality(ints({1, 1}), Scalar(2));
    r.generators = std::vector<AffineMap>{AffineMap::identity(1, Backend::rational)};
    CHECK_FALSE(check_affine_generators(r, 6, 1));

    auto g = graph_relation(AffineMap(Matrix::identity(2, Backend::rational), ints({1, -1})));
    CHECK(check_affine_generators(g, 6, 2));
  }
}
