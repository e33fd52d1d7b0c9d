#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "doctrina/error.hpp"
#include "doctrina/serialize.hpp"

using namespace doctrina;

namespace {

void round_trip(const nlohmann::ordered_json& j) {
  const std::string text = dump(j);
  const LoadedDoctrine d = load_doctrine(nlohmann::ordered_json::parse(text));
  CHECK(dump(to_json(d)) == text);
}

}  // namespace

TEST_CASE("table files round-trip") {
  for (const char* name : {"corrupted-reindex", "delta-top", "forall-as-exists", "mem-top"}) {
    CAPTURE(name);
    round_trip(table_to_json(planted_defect(name)));
  }
  LocalicDoctrine loc(FiniteHeytingAlgebra::chain(3));
  round_trip(table_to_json(tabulate_doctrine(loc, {loc.object(1), loc.object(2)})));
}

TEST_CASE("generated files round-trip") {
  for (const char* name : {"finset-sub", "localic", "arrow-presheaf", "per"}) {
    nlohmann::ordered_json j{{"schema", kSchema}, {"kind", "generated"}, {"fixture", fixture_to_json({name})}};
    round_trip(j);
  }
}

TEST_CASE("malformed files") {
  auto j = table_to_json(planted_defect("mem-top"));
  auto bad = j;
  bad["category"]["composition"].erase(bad["category"]["composition"].begin());
  CHECK_THROWS_WITH_AS(load_doctrine(bad), doctest::Contains("composition not total"), MalformedInput);
  bad = j;
  bad["schema"] = "other/0";
  CHECK_THROWS_AS(load_doctrine(bad), MalformedInput);
  bad = j;
  bad["reindex"][0]["map"][0]["to"] = "nowhere";
  CHECK_THROWS_AS(load_doctrine(bad), MalformedInput);
}
