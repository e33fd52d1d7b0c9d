#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "doctrina/examples.hpp"

using namespace doctrina;

TEST_CASE("arrow presheaf fibers are subpresheaves") {
  auto fx = gen_fixture({"arrow-presheaf"});
  CHECK(fx.objects.size() == 11);
  CHECK(validate_doctrine(*fx.doctrine, LawScope{fx.objects}).ok());
  // X = (2 -> 1): S1 in {0,1}, and S0 any subset when S1 = 1, else empty: 4 + 1
  const auto& d = static_cast<const PresheafSubDoctrine&>(*fx.doctrine);
  const ObjectId x = d.arrows().object({2, 1, {0, 0}});
  CHECK(d.fiber(x)->size() == 5);
}

TEST_CASE("double negation sheaves agree with dense-mono orthogonality") {
  auto fx = gen_fixture({"arrow-presheaf", "bool2", {2}, 2, "double-negation"});
  CHECK_MESSAGE(fx.build_report.ok(), fx.build_report.to_text());
  const auto& d = *fx.doctrine;
  std::vector<ObjectId> sheaves;
  for (ObjectId a : fx.objects) {
    if (is_sheaf(d, a, bijective_spans(d, a, fx.objects)).sheaf()) sheaves.push_back(a);
  }
  const auto& arrows = static_cast<const PresheafSubDoctrine&>(*fx.base).arrows();
  const auto oracle = dense_orthogonal_objects(arrows, fx.objects);
  CHECK(sheaves == oracle);
  for (ObjectId a : oracle) MESSAGE(arrows.object_name(a));
}

TEST_CASE("non meet preserving closure breaks Frobenius") {
  FixtureSpec s{"localic", "boolpqr", {1, 2}, 2, "nucleus", {0, 1, 2, 7, 4, 7, 7, 7}};
  auto fx = gen_fixture(s);
  CHECK(fx.build_report.has_law("does not preserve meets"));
  auto r = check_existential_laws(*fx.doctrine, LawScope{fx.objects});
  CHECK(r.has_law("Frobenius"));
}

TEST_CASE("non inflationary map is reported") {
  LocalicDoctrine d(FiniteHeytingAlgebra::chain(3));
  auto r = check_closure(d, ClosureOperator::pointwise(d, {0, 0, 2}, "j"), {d.object(1)});
  CHECK(r.has_law("not inflationary"));
}

TEST_CASE("planted defects") {
  auto t = planted_defect("corrupted-reindex");
  std::vector<ObjectId> all{0, 1};
  CHECK(validate_doctrine(t, LawScope{all}).has_law("functoriality"));
  auto dt = planted_defect("delta-top");
  CHECK(check_equality_laws(dt, {1}, LawScope{{0}}).has_law("substitutivity"));
  auto fe = planted_defect("forall-as-exists");
  CHECK(check_first_order(fe, LawScope{all}).has_law("forall adjunction"));
  auto mt = planted_defect("mem-top");
  CHECK(verify_power_object(mt, *mt.power_object(0), {0, 1}, LawScope{all}).has_law("power object: multiple solutions"));
  CHECK(validate_category(non_associative_category()).has_law("associativity"));
}
