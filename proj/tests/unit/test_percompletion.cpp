#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "doctrina/percompletion.hpp"

using namespace doctrina;

namespace {

// Symmetric transitive n*n matrices over h, by brute force over all matrices.
std::size_t count_pers(const FiniteHeytingAlgebra& h, std::size_t n) {
  const std::size_t cells = n * n;
  std::vector<ElementId> m(cells, 0);
  std::size_t count = 0;
  while (true) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) {
        ok = m[x * n + y] == m[y * n + x];
        for (std::size_t z = 0; z < n && ok; ++z) ok = h.leq(h.meet(m[x * n + y], m[y * n + z]), m[x * n + z]);
      }
    count += ok;
    std::size_t i = 0;
    while (i < cells && ++m[i] == h.size()) m[i++] = 0;
    if (i == cells) break;
  }
  return count;
}

}  // namespace

TEST_CASE("PER enumeration matches brute force") {
  const auto h = FiniteHeytingAlgebra::chain(3);
  CHECK(enumerate_pers(h, 1).size() == 3);
  CHECK(enumerate_pers(h, 2).size() == count_pers(h, 2));
  const auto pq = FiniteHeytingAlgebra::powerset({"p", "q"});
  CHECK(enumerate_pers(pq, 2).size() == count_pers(pq, 2));
}

TEST_CASE("chain3 completion") {
  LocalicDoctrine base(FiniteHeytingAlgebra::chain(3));
  ValidationReport r;
  auto d = build_per_completion(base, {{1, 2}, 2}, r);
  CHECK_MESSAGE(r.ok(), r.to_text());
  const auto& c = d->pers();
  const ObjectId one = *c.terminal();
  const ObjectId a = d->object({2, {2, 1, 1, 2}});
  auto hs = c.hom(one, a, kDefaultBudget);
  REQUIRE(hs);
  CHECK(hs->size() == 2);
  const ObjectId b = d->object({2, {2, 2, 2, 2}});
  CHECK(c.hom(one, b, kDefaultBudget)->size() == 1);
  LawScope scope{{one, a}};
  CHECK_MESSAGE(check_existential_laws(*d, scope).ok(), "");
  CHECK(check_first_order(*d, scope).ok());
}

TEST_CASE("boolean pq fixture") {
  LocalicDoctrine base(FiniteHeytingAlgebra::powerset({"p", "q"}));
  ValidationReport r;
  auto d = build_per_completion(base, {{1}, 1}, r);
  CHECK_MESSAGE(r.ok(), r.to_text());
  const auto& c = d->pers();
  const ObjectId one = *c.terminal();
  const ObjectId a = d->object({2, {1, 0, 0, 2}});  // diag({p},{q})
  const std::vector<ObjectId> probes{one, a};
  LawScope scope{probes};

  // ({p},{q}) from the terminal: total because {p} v {q} = top, single-valued
  // because {p} /\ {q} = bottom, yet no point of A is global.
  const Elem f{1, 2};
  CHECK(is_functional(*d, one, a, f).functional());
  CHECK(c.hom(one, a, kDefaultBudget)->empty());
  auto complete = is_complete(*d, a, probes, scope);
  CHECK_FALSE(complete.complete);

  auto sa = sheafify_object(*d, a, probes, scope);
  REQUIRE_MESSAGE(sa.ok(), sa.report.to_text());
  CHECK(sa.eta_bijective);
  CHECK_FALSE(find_inverse(c, sa.eta));
  CHECK(c.hom(one, sa.s, kDefaultBudget)->size() == 1);

  // The tabulating section is the glued one: value {p} at 0 and {q} at 1.
  ValidationReport incidents;
  const Morphism h = tabulate_functional(*d, sa, one, f, incidents);
  CHECK(incidents.ok());
  CHECK(sa.incl.map[h.map[0]] == 1 + 2 * 4);

  const std::vector<ObjectId> all{one, a, sa.s};
  auto sheaf_a = is_sheaf(*d, a, bijective_spans(*d, a, all));
  CHECK_FALSE(sheaf_a.sheaf());
  auto sheaf_s = is_sheaf(*d, sa.s, bijective_spans(*d, sa.s, all));
  CHECK(sheaf_s.sheaf());

  auto t = check_topos_correspondence(*d, probes, scope);
  CHECK_MESSAGE(t.report.ok(), t.report.to_text());
  CHECK(t.sheaves == std::vector<ObjectId>{one});
}

TEST_CASE("chain3 topos correspondence") {
  LocalicDoctrine base(FiniteHeytingAlgebra::chain(3));
  ValidationReport r;
  auto d = build_per_completion(base, {{1, 2}, 2}, r);
  REQUIRE(r.ok());
  const ObjectId one = *d->pers().terminal();
  std::vector<ObjectId> probes = d->objects();
  MESSAGE(probes.size() << " objects");
  auto t = check_topos_correspondence(*d, probes, LawScope{probes});
  CHECK_MESSAGE(t.report.ok(), t.report.to_text());
}

TEST_CASE("two-valued completion: every PER is a sheaf") {
  LocalicDoctrine base(FiniteHeytingAlgebra::chain(2));
  ValidationReport r;
  auto d = build_per_completion(base, {{1, 2}, 2}, r);
  REQUIRE(r.ok());
  const auto& objs = d->objects();
  auto t = check_topos_correspondence(*d, objs, LawScope{objs});
  CHECK_MESSAGE(t.report.ok(), t.report.to_text());
  CHECK(t.sheaves.size() == objs.size());
  for (ObjectId a : objs) {
    const auto& u = t.reflection.units.at(a);
    CHECK(find_inverse(d->pers(), u.eta));
  }
}
