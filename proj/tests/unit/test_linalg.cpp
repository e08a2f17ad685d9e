#include <doctest.h>

#include <random>

#include "reference.hpp"
#include "reflekt/errors.hpp"
#include "reflekt/linalg.hpp"

using namespace reflekt;
using reftest::ints;

namespace {

Matrix mat(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  std::vector<Vector> r;
  for (const auto& row : rows) r.push_back(ints(row));
  return Matrix::from_rows(r, cols, Backend::rational);
}

}  // namespace

TEST_SUITE("scalar") {
  TEST_CASE("rational arithmetic stays exact") {
    Scalar a = Scalar::fraction(1, 3, Backend::rational);
    Scalar b = Scalar::fraction(1, 6, Backend::rational);
    CHECK(a + b == Scalar::fraction(1, 2, Backend::rational));
    CHECK((a - b) * Scalar(6) == Scalar(1));
    CHECK((a / b) == Scalar(2));
    CHECK(Scalar::fraction(2, -4, Backend::rational).to_string() == "-1/2");
    CHECK(Scalar(7).to_string() == "7");
  }

  TEST_CASE("parse accepts integers, fractions and decimals") {
    CHECK(Scalar::parse("3/4", Backend::rational) == Scalar::fraction(3, 4, Backend::rational));
    CHECK(Scalar::parse("-1.25", Backend::rational) == Scalar::fraction(-5, 4, Backend::rational));
    CHECK(Scalar::parse("12", Backend::rational) == Scalar(12));
    CHECK(Scalar::parse("1/4", Backend::floating).to_double() == 0.25);
    CHECK_THROWS_AS(Scalar::parse("x", Backend::rational), InvalidArgument);
    CHECK_THROWS_AS(Scalar::parse("1/0", Backend::rational), InvalidArgument);
  }

  TEST_CASE("float text round-trips bit for bit") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
      const double x = u(rng);
      CHECK(Scalar::parse(Scalar::from_double(x).to_string(), Backend::floating).to_double() == x);
    }
  }

  TEST_CASE("mixed backends never combine silently") {
    Scalar q(1);
    Scalar f = Scalar::from_double(1.0);
    CHECK_THROWS_AS(q + f, BackendMismatch);
    CHECK_THROWS_AS(f.rational(), BackendMismatch);
    CHECK(f.convert(Backend::rational) == Scalar(1));
  }

  TEST_CASE("float comparisons use the tolerance") {
    Scalar a = Scalar::from_double(1.0);
    Scalar b = Scalar::from_double(1.0 + 1e-12);
    CHECK(compare(a, b) == 0);
    CHECK(compare(a, b, 0.0) == -1);
    CHECK(exact_less(a, b));
  }
}

TEST_SUITE("linalg") {
  TEST_CASE("kernel dimension examples") {
    CHECK(kernel_dim(Matrix::identity(3, Backend::rational)) == 0);
    CHECK(kernel_dim(Matrix(2, 3, Backend::rational)) == 3);
    CHECK(kernel_dim(mat({{1, -1}}, 2)) == 1);
  }

  TEST_CASE("rref examples") {
    auto r = rref(mat({{2, 4}, {1, 2}}, 2));
    CHECK(r.pivots == std::vector<std::size_t>{0});
    CHECK(r.reduced.row_vector(0) == ints({1, 2}));
    CHECK(r.reduced.row_vector(1) == ints({0, 0}));

    auto id = rref(Matrix::identity(3, Backend::rational));
    CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2});

    auto sw = rref(mat({{0, 1}, {1, 0}}, 2));
    CHECK(sw.reduced.row_vector(0) == ints({1, 0}));
    CHECK(sw.reduced.row_vector(1) == ints({0, 1}));
    CHECK(sw.pivots == std::vector<std::size_t>{0, 1});
  }

  TEST_CASE("orthogonal complement examples") {
    auto b1 = orthogonal_complement_basis(ints({1, 0}));
    CHECK(b1.rows() == 1);
    CHECK(b1.row_vector(0) == ints({0, 1}));

    auto b2 = orthogonal_complement_basis(ints({1, 1}));
    CHECK(b2.row_vector(0) == ints({1, -1}));

    auto b3 = orthogonal_complement_basis(ints({1, 2, 3}));
    REQUIRE(b3.rows() == 2);
    CHECK(b3.row_vector(0) == ints({2, -1, 0}));
    CHECK(b3.row_vector(1) == ints({3, 0, -1}));

    CHECK_THROWS_AS(orthogonal_complement_basis(ints({0, 0})), InvalidArgument);
  }

  TEST_CASE("complement rows annihilate a and have full rank on random input") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + trial % 5;
      Vector a;
      for (std::size_t i = 0; i < n; ++i) a.push_back(Scalar(d(rng)));
      bool zero = true;
      for (const auto& s : a) zero = zero && s.sign() == 0;
      if (zero) continue;
      Matrix b = orthogonal_complement_basis(a);
      CHECK(b.rows() == n - 1);
      CHECK(rank(b) == n - 1);
      for (std::size_t r = 0; r < b.rows(); ++r) CHECK(dot(b.row(r), a) == Scalar(0));
    }
  }

  TEST_CASE("rref rows span the original rows") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
      Matrix m(3, 4, Backend::rational);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 4; ++c) m(r, c) = Scalar(d(rng));
      auto r = rref(m);
      // Stacking the reduced rows under m must not raise the rank.
      Matrix both = m;
      for (std::size_t i = 0; i < r.pivots.size(); ++i) both.append_row(r.reduced.row(i));
      CHECK(rank(both) == r.pivots.size());
      for (std::size_t i = 0; i < r.pivots.size(); ++i) CHECK(r.reduced(i, r.pivots[i]) == Scalar(1));
    }
  }

  TEST_CASE("matrix products") {
    Matrix a = mat({{1, 2}, {3, 4}}, 2);
    CHECK(a * ints({1, 1}) == ints({3, 7}));
    Matrix sq = a * a;
    CHECK(sq.row_vector(0) == ints({7, 10}));
    CHECK(a.transpose().row_vector(0) == ints({1, 3}));
    CHECK_THROWS_AS(a * ints({1, 2, 3}), DimensionError);
  }
}
