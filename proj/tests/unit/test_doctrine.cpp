#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "doctrina/valuation.hpp"

using namespace doctrina;

namespace {

LocalicDoctrine subsets() { return LocalicDoctrine(FiniteHeytingAlgebra::chain(2)); }
LocalicDoctrine chain3() { return LocalicDoctrine(*FiniteHeytingAlgebra::named("chain3")); }

Morphism fn(const LocalicDoctrine& d, std::size_t n, std::size_t m, std::vector<std::uint32_t> map) {
  return Morphism{d.object(n), d.object(m), std::move(map)};
}

}  // namespace

TEST_CASE("subset doctrine laws on small sets") {
  auto d = subsets();
  LawScope scope{{d.object(0), d.object(1), d.object(2), d.object(4)}};
  auto r = validate_doctrine(d, scope);
  CHECK_MESSAGE(r.ok(), r.to_text());
  auto e = check_existential_laws(d, scope);
  CHECK_MESSAGE(e.ok(), e.to_text());
}

TEST_CASE("localic chain laws") {
  auto d = chain3();
  LawScope scope{{d.object(1), d.object(2), d.object(3)}};
  CHECK(validate_doctrine(d, scope).ok());
  CHECK(check_existential_laws(d, scope).ok());
  CHECK(check_first_order(d, scope).ok());
  auto eq = check_equality_laws(d, {d.object(2)}, LawScope{{d.object(1), d.object(2)}});
  CHECK_MESSAGE(eq.ok(), eq.to_text());
}

TEST_CASE("exists along") {
  auto s = subsets();
  CHECK(exists_along(s, fn(s, 2, 1, {0, 0}), Elem{1, 0}) == Elem{1});
  auto h = chain3();
  // (1/2, 0) along 2 -> 1 is (1/2)
  CHECK(exists_along(h, fn(h, 2, 1, {0, 0}), Elem{1, 0}) == Elem{1});
  CHECK(h.equality(h.object(2)) == Elem{2, 0, 0, 2});
}

TEST_CASE("comprehension") {
  auto s = subsets();
  auto w = find_comprehension(s, s.object(2), Elem{1, 0}, {s.object(0), s.object(1), s.object(2)});
  REQUIRE(w);
  CHECK(w->incl == fn(s, 1, 2, {0}));
  CHECK(w->mono);
  auto h = chain3();
  auto half = find_comprehension(h, h.object(1), Elem{1}, {h.object(0), h.object(1), h.object(2)});
  REQUIRE(half);
  CHECK(half->incl.dom == h.object(0));
}
