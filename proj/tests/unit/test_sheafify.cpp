#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "doctrina/sheafify.hpp"
#include "doctrina/valuation.hpp"

using namespace doctrina;

TEST_CASE("subset doctrine sheafification of 2") {
  LocalicDoctrine d(FiniteHeytingAlgebra::chain(2));
  const ObjectId two = d.object(2);
  LawScope scope{{d.object(1), two}};
  auto s = check_singletons(d, two, {d.object(1), two}, scope);
  CHECK_MESSAGE(s.ok(), s.report.to_text());
  CHECK(s.singleton.map == std::vector<std::uint32_t>{1, 2});
  auto r = sheafify_object(d, two, {d.object(1), two}, scope);
  CHECK(r.ok());
  CHECK(d.sets().carrier(r.s) == 2);
  auto refl = reflector(d, {d.object(1), two}, scope);
  CHECK_MESSAGE(refl.report.ok(), refl.report.to_text());
  auto eq = check_equivalences(d, refl, {d.object(1), two}, scope);
  CHECK_MESSAGE(eq.ok(), eq.to_text());
}
