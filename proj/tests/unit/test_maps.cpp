#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "doctrina/maps.hpp"
#include "doctrina/valuation.hpp"

using namespace doctrina;

TEST_CASE("bijectivity of functions between finite sets") {
  LocalicDoctrine d(FiniteHeytingAlgebra::chain(2));
  const ObjectId two = d.object(2), three = d.object(3);
  auto v = internal_bijectivity(d, Morphism{three, two, {0, 1, 1}});
  CHECK(v.surjective);
  CHECK_FALSE(v.injective);
  v = internal_bijectivity(d, Morphism{two, three, {2, 0}});
  CHECK(v.injective);
  CHECK_FALSE(v.surjective);
  CHECK(internal_bijectivity(d, Morphism{two, two, {1, 0}}).bijective());
}

TEST_CASE("graphs are functional and compose") {
  LocalicDoctrine d(FiniteHeytingAlgebra::chain(2));
  const ObjectId two = d.object(2), three = d.object(3);
  const Morphism f{three, two, {0, 1, 1}};
  const Morphism g{two, three, {2, 1}};
  CHECK(is_functional(d, three, two, graph_of(d, f)).functional());
  auto op = opposite(d, three, two, graph_of(d, f));
  CHECK_FALSE(is_functional(d, two, three, op).functional());
  CHECK(compose_relations(d, three, two, three, graph_of(d, f), graph_of(d, g)) ==
        graph_of(d, d.base().compose(g, f)));
  auto [m, count] = morphisms_with_graph(d, three, two, graph_of(d, f));
  REQUIRE(m);
  CHECK(*m == f);
  CHECK(count == 1);
}

TEST_CASE("inverse of a bijection in Map") {
  LocalicDoctrine d(FiniteHeytingAlgebra::chain(2));
  const ObjectId three = d.object(3);
  const Morphism s{three, three, {1, 2, 0}};
  const Morphism s_inv{three, three, {2, 0, 1}};
  auto inv = relation_inverse(d, three, three, graph_of(d, s));
  REQUIRE(inv);
  CHECK(*inv == graph_of(d, s_inv));
  CHECK_FALSE(relation_inverse(d, three, d.object(2), graph_of(d, Morphism{three, d.object(2), {0, 1, 1}})));
}

TEST_CASE("finite sets are complete for the subset doctrine") {
  LocalicDoctrine d(FiniteHeytingAlgebra::chain(2));
  LawScope scope{{d.object(1), d.object(2), d.object(3)}};
  auto v = is_complete(d, d.object(2), scope.objects, scope);
  CHECK(v.complete);
  CHECK(v.exhaustive);
}

TEST_CASE("finite sets stay complete over a chain") {
  // In a chain, F(0) meet F(1) = bottom and F(0) join F(1) = top force one
  // value to be top, so every functional relation from 1 is a graph.
  LocalicDoctrine d(FiniteHeytingAlgebra::chain(3));
  LawScope scope{{d.object(1), d.object(2)}};
  auto v = is_complete(d, d.object(2), scope.objects, scope);
  CHECK(v.exhaustive);
  INFO(v.report.to_text());
  CHECK(v.complete);
}
