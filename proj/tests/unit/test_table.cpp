#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "doctrina/table.hpp"
#include "doctrina/valuation.hpp"

using namespace doctrina;

TEST_CASE("tabulated localic doctrine keeps its laws") {
  LocalicDoctrine loc(FiniteHeytingAlgebra::chain(3));
  const std::vector<ObjectId> objs{loc.object(1), loc.object(2), loc.object(3)};
  TableDoctrine t = tabulate_doctrine(loc, objs);
  t.check_complete();
  std::vector<ObjectId> all;
  for (ObjectId a = 0; a < t.category().object_count(); ++a) all.push_back(a);
  LawScope scope{all};
  CHECK(validate_doctrine(t, scope).ok());
  CHECK(check_existential_laws(t, scope).ok());
  CHECK(check_first_order(t, scope).ok());
  CHECK(t.power_object(0).has_value());
}

TEST_CASE("corrupted reindex entry is a functoriality violation") {
  LocalicDoctrine loc(FiniteHeytingAlgebra::chain(2));
  TableDoctrine t = tabulate_doctrine(loc, {loc.object(1), loc.object(2)});
  const auto& c = t.category();
  // the swap 2 -> 2
  MorphismId sw = 0;
  for (MorphismId m : c.hom_ids(1, 1)) {
    if (c.info(m).name == "2->2[1,0]") sw = m;
  }
  REQUIRE(c.info(sw).name == "2->2[1,0]");
  auto table = t.reindex_table(sw);
  table[1] = table[2];
  t.set_reindex(sw, table);
  auto r = validate_doctrine(t, LawScope{{0, 1}});
  CHECK(r.has_law("functoriality"));
  MESSAGE(r.to_text());
}
