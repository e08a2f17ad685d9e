#include <doctest.h>

#include <cmath>

#include "reference.hpp"
#include "reflekt/errors.hpp"
#include "reflekt/oracles.hpp"

using namespace reflekt;
using reftest::ints;

TEST_SUITE("oracles") {
  TEST_CASE("permutation orbits match brute force") {
    CHECK(permutation_orbit(ints({1, 2, 3})).size() == 6);
    CHECK(permutation_orbit(ints({1, 2, 2})).size() == 3);
    CHECK(permutation_orbit(ints({5, 5, 5, 5})).size() == 1);
    for (const auto& v : std::vector<std::vector<long>>{{1, 2, 3, 4}, {3, 1, 3, 2, 7}, {1, 1, 2, 2, 3, 3}}) {
      CHECK(reftest::to_set(permutation_orbit(ints(v)).points) == reftest::permutations(v));
    }
  }

  TEST_CASE("signed orbits match brute force") {
    CHECK(signed_orbit(ints({1, 2})).size() == 8);
    auto even = even_signed_orbit(ints({1, 2}));
    CHECK(reftest::to_set(even.points) ==
          std::set<std::vector<long>>{{1, 2}, {2, 1}, {-1, -2}, {-2, -1}});
    CHECK(signed_orbit(ints({0, 0})).size() == 1);
    for (const auto& v : std::vector<std::vector<long>>{{1, 2, 3}, {0, 1, 2, 2}}) {
      CHECK(reftest::to_set(signed_orbit(ints(v)).points) == reftest::signed_permutations(v, false));
      CHECK(reftest::to_set(even_signed_orbit(ints(v)).points) == reftest::signed_permutations(v, true));
    }
  }

  TEST_CASE("regular polygons") {
    auto four = mgon_orbit(4);
    REQUIRE(four.size() == 4);
    auto ref = reftest::polygon(4);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(four.points[k][0].to_double() == doctest::Approx(ref[k].first));
      CHECK(four.points[k][1].to_double() == doctest::Approx(ref[k].second));
    }
    auto three = mgon_orbit(3);
    CHECK(three.points[1][0].to_double() == doctest::Approx(-0.5));
    CHECK(std::fabs(three.points[1][1].to_double()) == doctest::Approx(std::sqrt(3.0) / 2));
    auto six = mgon_orbit(6);
    for (std::size_t k = 0; k < 6; ++k) {
      const auto& a = six.points[k];
      const auto& b = six.points[(k + 1) % 6];
      CHECK(dot(a, b).to_double() == doctest::Approx(0.5));
    }
  }

  TEST_CASE("huffman vectors match explicit tree enumeration") {
    CHECK(huffman_vectors(2).size() == 1);
    CHECK(huffman_vectors(3).size() == 3);
    CHECK(huffman_vectors(4).size() == 13);
    for (std::size_t n = 2; n <= 7; ++n) {
      CHECK(reftest::to_set(huffman_vectors(n).points) == reftest::huffman_trees(n));
    }
    CHECK(reftest::huffman_trees(5).size() == 75);
    CHECK(reftest::huffman_trees(6).size() == 525);
  }

  TEST_CASE("parity vertices") {
    CHECK(reftest::to_set(parity_vertices(2, true).points) == std::set<std::vector<long>>{{1, 0}, {0, 1}});
    CHECK(parity_vertices(3, true).size() == 4);
    auto even = parity_vertices(3, false);
    CHECK(even.size() == 4);
    CHECK(even.contains(ints({0, 0, 0})));
    for (std::size_t n = 2; n <= 10; ++n) {
      CHECK(reftest::to_set(parity_vertices(n, true).points) == reftest::parity_points(n, true));
      CHECK(reftest::to_set(parity_vertices(n, false).points) == reftest::parity_points(n, false));
    }
  }

  TEST_CASE("completion times") {
    CHECK(reftest::to_set(completion_time_vertices(ints({1, 2})).points) ==
          std::set<std::vector<long>>{{1, 3}, {3, 2}});
    CHECK(reftest::to_set(completion_time_vertices(ints({1, 1, 1})).points) == reftest::permutations({1, 2, 3}));
    CHECK(reftest::to_set(completion_time_vertices(ints({0, 5})).points) ==
          std::set<std::vector<long>>{{0, 5}, {5, 5}});
    Vector p{Scalar::fraction(3, 2, Backend::rational), Scalar(2), Scalar::fraction(1, 3, Backend::rational),
             Scalar(1)};
    auto got = completion_time_vertices(p);
    auto want = reftest::completion_times(p);
    CHECK(got.size() == 24);
    for (const auto& w : want) CHECK(got.contains(w));
  }

  TEST_CASE("lookup agrees with linear membership") {
    auto set = signed_orbit(ints({1, 2, 3}));
    VertexLookup lookup(set);
    for (const auto& p : set.points) CHECK(lookup.contains(p));
    CHECK_FALSE(lookup.contains(ints({1, 2, 4})));
    CHECK_FALSE(lookup.contains(ints({1, 2})));
    CHECK_FALSE(set.contains(ints({1, 2, 4})));
  }

  TEST_CASE("enumeration caps") {
    CHECK_THROWS_AS(permutation_orbit(ints({1, 2, 3, 4, 5, 6, 7, 8, 9})), InvalidArgument);
    CHECK_THROWS_AS(signed_orbit(ints({1, 2, 3, 4, 5, 6, 7})), InvalidArgument);
  }
}
