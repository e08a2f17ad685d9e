#include <doctest.h>

#include "reference.hpp"
#include "reflekt/constructions.hpp"
#include "reflekt/errors.hpp"
#include "reflekt/verify.hpp"

using namespace reflekt;
using reftest::ints;

namespace {

VertexSet perm3() { return permutation_orbit(ints({1, 2, 3})); }

ExtendedFormulation pi3() { return a_permutahedron_ef(HPolyhedron::point(ints({1, 2, 3})), batcher(3)); }

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("3-permutahedron passes") {
    auto report = verify_projection_equality(pi3(), perm3(), {.objectives = 50, .seed = 7});
    CHECK(report.passed());
    CHECK(report.vertices.total == 6);
    CHECK(report.vertices.passed == 6);
    CHECK(report.objectives.passed == 50);
    CHECK(report.objectives.max_deviation == 0.0);
  }

  TEST_CASE("dropping the last relation is caught") {
    auto chain = a_permutahedron_chain(HPolyhedron::point(ints({1, 2, 3})), batcher(3));
    auto cut = build_extension(without_relation(chain, chain.size() - 1));
    auto report = verify_projection_equality(cut, perm3(), {.objectives = 50, .seed = 7});
    CHECK_FALSE(report.passed());
    CHECK(report.vertices.passed < report.vertices.total);
    CHECK_FALSE(report.failures.empty());
  }

  TEST_CASE("too large a polytope fails on objectives only") {
    // Projection is Pi_3, oracle lists a strict subset of its vertices.
    auto sub = make_vertex_set(3, {ints({1, 2, 3}), ints({3, 2, 1})}, "two");
    auto report = verify_projection_equality(pi3(), sub, {.objectives = 50, .seed = 3});
    CHECK(report.vertices.ok());
    CHECK_FALSE(report.objectives.ok());
  }

  TEST_CASE("m-gon m=4 passes with a float tolerance") {
    VerifyOptions o;
    o.objectives = 25;
    o.tolerance = 1e-6;
    CHECK(verify_projection_equality(mgon_ef(4), mgon_orbit(4), o).passed());
  }

  TEST_CASE("reports are deterministic") {
    auto a = verify_projection_equality(pi3(), perm3(), {.objectives = 20, .seed = 99});
    auto b = verify_projection_equality(pi3(), perm3(), {.objectives = 20, .seed = 99});
    CHECK(report_table(a) == report_table(b));
    auto oa = random_objectives(10, 4, 5, Backend::rational);
    auto ob = random_objectives(10, 4, 5, Backend::rational);
    CHECK(oa == ob);
    for (const auto& c : oa) {
      bool nonzero = false;
      for (const auto& s : c) {
        CHECK(std::labs(s.rational().get_num().get_si()) <= 10);
        nonzero = nonzero || s.sign() != 0;
      }
      CHECK(nonzero);
    }
    CHECK(random_objectives(10, 4, 6, Backend::rational) != oa);
  }

  TEST_CASE("dimension mismatch between oracle and projection") {
    CHECK_THROWS_AS(verify_projection_equality(pi3(), mgon_orbit(4)), DimensionError);
  }

  TEST_CASE("two-condition criterion") {
    // Signing a point: W is its sign orbit.
    std::vector<ReflectionSpec> signs{sign_spec(1, 2), sign_spec(2, 2)};
    auto base = make_vertex_set(2, {ints({1, 2})}, "p");
    auto w = sign_orbit({ints({1, 2})});
    auto ok = check_chain_conditions(base, signs, w);
    CHECK(ok.condition1);
    CHECK(ok.condition2);

    // Parity, n=3 odd, before the affine map: W = odd +-1 vectors.
    auto chain = parity_chain(3, true);
    std::vector<ReflectionSpec> specs = chain_specs(chain);
    auto start = make_vertex_set(3, {ints({-1, 1, 1})}, "start");
    auto odd = make_vertex_set(3, {ints({-1, 1, 1}), ints({1, -1, 1}), ints({1, 1, -1}), ints({-1, -1, -1})}, "odd");
    CHECK(check_chain_conditions(start, specs, odd).ok());

    // A non-sorting comparator list cannot pull every permutation back to (1,2,3).
    std::vector<ReflectionSpec> partial{transposition_spec(1, 2, 3)};
    auto res = check_chain_conditions(make_vertex_set(3, {ints({1, 2, 3})}, "p"), partial, perm3());
    CHECK(res.condition1);
    CHECK_FALSE(res.condition2);
  }

  TEST_CASE("size reports") {
    auto r8 = ConstructionRecipe{RecipeName::mgon, {{"m", "8"}}};
    auto check = size_report(build_recipe(r8), ExpectedSize{8, 10, 4, {}});
    CHECK(check.pass);
    auto wrong = size_report(build_recipe(r8), ExpectedSize{9, 10, 4, {}});
    CHECK_FALSE(wrong.pass);
    REQUIRE(wrong.diffs.size() == 1);
    CHECK(wrong.diffs[0] == "inequalities: expected 9, got 8");

    auto r5 = ConstructionRecipe{RecipeName::parity, {{"n", "5"}, {"parity", "odd"}}};
    CHECK(size_report(build_recipe(r5), ExpectedSize{16, 50, 8, {}}).pass);
  }

  TEST_CASE("verify_recipe runs every hypothesis check") {
    auto report = verify_recipe({RecipeName::huffman_quadratic, {{"n", "4"}}}, {.objectives = 10, .seed = 1});
    CHECK(report.passed());
    CHECK(report.size);
    CHECK(report.hypotheses.size() == 2);
    CHECK(report.vertices.lifted == report.vertices.total);

    VerifyOptions lp_only;
    lp_only.objectives = 10;
    lp_only.chain_lifts = false;
    auto plain = verify_recipe({RecipeName::huffman_quadratic, {{"n", "4"}}}, lp_only);
    CHECK(plain.passed());
    CHECK(plain.vertices.lifted == 0);
  }

  TEST_CASE("a bad lift falls back to the LP") {
    VerifyOptions o;
    o.objectives = 5;
    o.lift = [](const Vector&) { return std::optional<Vector>(zeros(12, Backend::rational)); };
    auto report = verify_projection_equality(pi3(), perm3(), o);
    CHECK(report.passed());
    CHECK(report.vertices.lifted == 0);
  }

  TEST_CASE("mutation sweep on the 3-permutahedron") {
    auto chain = a_permutahedron_chain(HPolyhedron::point(ints({1, 2, 3})), batcher(3));
    auto out = mutation_sweep(chain, perm3(), {.objectives = 20, .seed = 2});
    REQUIRE(out.size() == 3);
    for (const auto& m : out) CHECK(m.kind == MutationKind::detected);
  }

  TEST_CASE("dropping a Huffman embedding breaks the type chain") {
    auto chain = huffman_quadratic_chain(4);
    auto out = mutation_sweep(chain, huffman_vectors(4), {.objectives = 10, .seed = 2});
    REQUIRE(out.size() == chain.size());
    CHECK(out[0].relation == "eps3");
    CHECK(out[0].kind == MutationKind::type_chain_break);
  }
}
