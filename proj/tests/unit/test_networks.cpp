#include <doctest.h>

#include <algorithm>
#include <random>

#include "reference.hpp"
#include "reflekt/errors.hpp"
#include "reflekt/networks.hpp"

using namespace reflekt;
using reftest::ints;

namespace {

ComparatorSeq seq(std::size_t n, std::vector<Comparator> cs, SeqOrder order = SeqOrder::application) {
  return ComparatorSeq{n, std::move(cs), order};
}

// Direct compare-exchange simulation, independent of apply_comparators.
std::vector<long> run_network(const ComparatorSeq& s, std::vector<long> v) {
  auto c = s.as(SeqOrder::application);
  for (const auto& [k, l] : c.comparators) {
    if (v[k - 1] > v[l - 1]) std::swap(v[k - 1], v[l - 1]);
  }
  return v;
}

}  // namespace

TEST_SUITE("networks") {
  TEST_CASE("batcher examples") {
    CHECK(batcher(2).comparators == std::vector<Comparator>{{1, 2}});
    CHECK(batcher(4).comparators == std::vector<Comparator>{{1, 2}, {3, 4}, {1, 3}, {2, 4}, {2, 3}});
    CHECK(batcher(8).size() == 19);
    CHECK(batcher(16).size() == 63);
    CHECK(batcher(1).size() == 0);
  }

  TEST_CASE("batcher sorts random integer vectors") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> d(-20, 20);
    for (std::size_t n = 2; n <= 20; ++n) {
      const auto net = batcher(n);
      for (int trial = 0; trial < 40; ++trial) {
        std::vector<long> v(n);
        for (auto& x : v) x = d(rng);
        auto want = v;
        std::sort(want.begin(), want.end());
        CHECK(run_network(net, v) == want);
      }
    }
  }

  TEST_CASE("zero-one validation") {
    CHECK(is_sorting_network(seq(2, {{1, 2}})));
    CHECK_FALSE(is_sorting_network(seq(3, {{1, 2}})));
    CHECK(is_sorting_network(seq(3, {{1, 2}, {2, 3}, {1, 2}})));
    CHECK_FALSE(is_sorting_network(seq(3, {{1, 2}, {1, 2}, {2, 3}})));
    for (std::size_t n = 2; n <= 8; ++n) CHECK(is_sorting_network(insertion(n)));
    CHECK(insertion(5).size() == 10);
  }

  TEST_CASE("validation rejects bad comparators") {
    CHECK_THROWS_AS(seq(3, {{2, 2}}).validate(), InvalidArgument);
    CHECK_THROWS_AS(seq(3, {{1, 4}}).validate(), InvalidArgument);
    CHECK_THROWS_AS(seq(3, {{0, 1}}).validate(), InvalidArgument);
  }

  TEST_CASE("theta sequences") {
    auto t3 = theta_seq(3);
    CHECK(t3.order == SeqOrder::relation);
    CHECK(t3.comparators == std::vector<Comparator>{{1, 2}, {2, 3}, {1, 2}});
    auto t4 = theta_seq(4);
    CHECK(t4.comparators == std::vector<Comparator>{{2, 3}, {1, 2}, {3, 4}, {2, 3}, {1, 2}});
    for (std::size_t k = 3; k <= 10; ++k) CHECK(theta_seq(k).size() == 2 * k - 3);
    CHECK_THROWS_AS(theta_seq(2), InvalidArgument);
  }

  TEST_CASE("theta puts the two largest entries last") {
    CHECK(apply_comparators(theta_seq(4), ints({3, 1, 3, 2}), SeqOrder::application) == ints({1, 2, 3, 3}));
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> d(0, 9);
    for (std::size_t k = 3; k <= 9; ++k) {
      for (int trial = 0; trial < 30; ++trial) {
        std::vector<long> v(k);
        for (auto& x : v) x = d(rng);
        auto out = run_network(theta_seq(k), v);
        auto sorted = v;
        std::sort(sorted.begin(), sorted.end());
        CHECK(out[k - 1] == sorted[k - 1]);
        CHECK(out[k - 2] == sorted[k - 2]);
      }
    }
  }

  TEST_CASE("stride sequences") {
    CHECK(stride_indices(3) == std::vector<std::size_t>{3, 2, 1});
    CHECK(stride_seq(3).comparators == std::vector<Comparator>{{2, 3}, {1, 2}, {2, 3}});
    CHECK(stride_indices(6) == std::vector<std::size_t>{6, 5, 4, 2});
    CHECK(stride_seq(6).comparators == std::vector<Comparator>{{5, 6}, {4, 5}, {2, 4}, {4, 5}, {5, 6}});
    CHECK(stride_indices(4) == std::vector<std::size_t>{4, 3, 2});
    CHECK(stride_seq(4).comparators == std::vector<Comparator>{{3, 4}, {2, 3}, {3, 4}});
    for (std::size_t k = 3; k <= 40; ++k) {
      const auto s = stride_seq(k);
      auto rev = s.comparators;
      std::reverse(rev.begin(), rev.end());
      CHECK(rev == s.comparators);
      CHECK(s.size() == 2 * stride_indices(k).size() - 3);
    }
  }

  TEST_CASE("order conversion and application") {
    auto b = batcher(4);
    CHECK(b.as(SeqOrder::relation).as(SeqOrder::application) == b);
    CHECK(apply_comparators(b, ints({4, 3, 2, 1}), SeqOrder::application) == ints({1, 2, 3, 4}));
    CHECK(apply_comparators(seq(2, {}), ints({2, 1}), SeqOrder::application) == ints({2, 1}));
    auto rels = transposition_chain(b);
    REQUIRE(rels.size() == 5);
    CHECK(rels.front().label == "T2,3");
    CHECK(rels.back().label == "T1,2");
  }

  TEST_CASE("zero-one cap") { CHECK_THROWS_AS(is_sorting_network(batcher(25)), InvalidArgument); }
}
