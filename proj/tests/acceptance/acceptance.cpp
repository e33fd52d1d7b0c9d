// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "doctrina/error.hpp"
#include "doctrina/examples.hpp"
#include "doctrina/fincat.hpp"
#include "doctrina/percompletion.hpp"
#include "doctrina/serialize.hpp"
#include "doctrina/sheafify.hpp"

using namespace doctrina;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

// ------------------------------------------------------------- fixtures

const Fixture& finset_sub() {
  static const Fixture fx = gen_fixture({"finset-sub"});
  return fx;
}

const Fixture& boolean_pers() {
  static const Fixture fx = gen_fixture({"per", "boolpq", {1, 2}, 2});
  return fx;
}

const PerDoctrine& per_of(const Fixture& fx) { return static_cast<const PerDoctrine&>(*fx.doctrine); }

// Equality laws one (X, A) pair at a time, each required to be exhaustive.
// The budget covers P(4 x 4) over the three-element chain (3^16 formulas).
Outcome equality_suite(const Doctrine& d, const std::vector<ObjectId>& objects, std::size_t& pairs) {
  Outcome o;
  for (ObjectId a : objects) {
    for (ObjectId x : objects) {
      LawScope scope{{x}, {}, std::uint64_t{1} << 26};
      auto r = check_equality_laws(d, {a}, scope);
      const std::string at = d.base().object_name(x) + "," + d.base().object_name(a);
      o.require(r.ok(), "equality laws at " + at + ":\n" + r.to_text());
      o.require(!r.sampled(), "equality laws sampled at " + at);
      ++pairs;
    }
  }
  return o;
}

Outcome law_suite(const Fixture& fx, std::string& note) {
  Outcome o;
  const Doctrine& d = *fx.doctrine;
  LawScope scope{fx.objects};
  auto v = validate_doctrine(d, scope);
  o.require(v.ok() && !v.sampled(), "validate_doctrine:\n" + v.to_text());
  auto e = check_existential_laws(d, scope);
  o.require(e.ok() && !e.sampled(), "existential laws:\n" + e.to_text());
  std::size_t pairs = 0;
  auto q = equality_suite(d, fx.objects, pairs);
  o.require(q.pass, q.detail);
  note += (note.empty() ? "" : ", ") + fx.spec.name + " " + std::to_string(pairs) + " exhaustive equality pairs";
  return o;
}

// ------------------------------------------------------------ criteria

Outcome criterion1() {
  Outcome o;
  std::string note;
  auto a = law_suite(finset_sub(), note);
  o.require(a.pass, a.detail);
  const Fixture localic = gen_fixture({"localic", "chain3", {1, 2, 4}});
  auto b = law_suite(localic, note);
  o.require(b.pass, b.detail);
  if (o.pass) o.detail = note;
  return o;
}

// Set-level oracle: injective and surjective functions.
Outcome criterion2() {
  Outcome o;
  const auto& fx = finset_sub();
  const Doctrine& d = *fx.doctrine;
  const Category& c = d.base();
  const auto& sets = static_cast<const LocalicDoctrine&>(d).sets();
  std::size_t n = 0;
  for (const auto& f : morphisms_among(c, fx.objects)) {
    const auto v = internal_bijectivity(d, f);
    const std::set<std::uint32_t> image(f.map.begin(), f.map.end());
    const bool injective = image.size() == f.map.size();
    const bool surjective = image.size() == sets.carrier(f.cod);
    o.require(v.injective == injective, "injectivity differs at " + c.morphism_name(f));
    o.require(v.surjective == surjective, "surjectivity differs at " + c.morphism_name(f));
    o.require(v.bijective() == find_inverse(c, f).has_value(), "bijective vs iso at " + c.morphism_name(f));
    ++n;
  }
  if (o.pass) o.detail = std::to_string(n) + " morphisms";
  return o;
}

Outcome singletons_and_units(const Doctrine& d, const std::vector<ObjectId>& objects,
                             const std::vector<ObjectId>& probes) {
  Outcome o;
  LawScope scope{probes};
  for (ObjectId a : objects) {
    const std::string an = d.base().object_name(a);
    auto s = check_singletons(d, a, probes, scope);
    o.require(s.ok() && s.exhaustive, "singletons at " + an + ":\n" + s.report.to_text());
    auto sa = sheafify_object(d, a, probes, scope);
    o.require(sa.eta_bijective, "eta not bijective at " + an);
    o.require(sa.membership_identity, "membership identity at " + an);
    o.require(sa.report.ok(), "unit report at " + an + ":\n" + sa.report.to_text());
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto& fs = finset_sub();
  auto a = singletons_and_units(*fs.doctrine, fs.objects, fs.objects);
  o.require(a.pass, a.detail);
  const auto& pf = boolean_pers();
  o.require(pf.objects.size() >= 10, "fewer than 10 PER probes");
  auto b = singletons_and_units(*pf.doctrine, pf.objects, pf.objects);
  o.require(b.pass, b.detail);
  if (o.pass) o.detail = std::to_string(fs.objects.size()) + " sets, " + std::to_string(pf.objects.size()) + " PERs";
  return o;
}

Outcome tabulation(const Doctrine& d, const std::vector<ObjectId>& probes, std::size_t& relations) {
  Outcome o;
  const Category& c = d.base();
  LawScope scope{probes};
  for (ObjectId a : probes) {
    const auto sa = sheafify_object(d, a, probes, scope);
    const Elem& delta_s = d.equality(sa.s);
    for (ObjectId y : probes) {
      const ObjectId ya = require_product(c, y, a).object;
      auto fib = d.fiber(ya);
      o.require(fib.has_value(), "fiber over " + c.object_name(ya) + " too large");
      if (!fib) continue;
      for (const auto& f : *fib) {
        if (!is_functional(d, y, a, f).functional()) continue;
        ++relations;
        ValidationReport incidents;
        const Morphism h = tabulate_functional(d, sa, y, f, incidents);
        o.require(incidents.ok(), "tabulation incidents:\n" + incidents.to_text());
        const Elem back = d.reindex(cross(c, h, sa.eta), delta_s);
        o.require(back == f, "F differs from delta_S(h y, eta a) at " + c.object_name(y) + "," + c.object_name(a));
      }
      const auto gs = c.hom(y, a, kDefaultBudget);
      for (const auto& g : *gs) {
        ValidationReport incidents;
        const Morphism h = tabulate_functional(d, sa, y, graph_of(d, g), incidents);
        o.require(c.equal(h, c.compose(sa.eta, g)), "graph of " + c.morphism_name(g) + " does not tabulate to eta.f");
      }
    }
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::size_t n = 0;
  auto a = tabulation(*finset_sub().doctrine, finset_sub().objects, n);
  o.require(a.pass, a.detail);
  auto b = tabulation(*boolean_pers().doctrine, boolean_pers().objects, n);
  o.require(b.pass, b.detail);
  if (o.pass) o.detail = std::to_string(n) + " functional relations";
  return o;
}

Outcome sheafification_theorem(const Doctrine& d, const std::vector<ObjectId>& probes, std::size_t& spans) {
  Outcome o;
  const Category& c = d.base();
  LawScope scope{probes};
  auto refl = reflector(d, probes, scope);
  o.require(refl.report.ok(), "reflector:\n" + refl.report.to_text());
  std::vector<ObjectId> full = probes;
  for (const auto& [a, sa] : refl.units) full.push_back(sa.s);
  std::sort(full.begin(), full.end());
  full.erase(std::unique(full.begin(), full.end()), full.end());
  for (const auto& [a, sa] : refl.units) {
    for (const auto& span : bijective_spans(d, sa.s, probes)) {
      ValidationReport incidents;
      const Morphism h = extend_along_bijective(d, sa, span.d, span.q, incidents);
      o.require(incidents.ok(), "extension incidents:\n" + incidents.to_text());
      o.require(c.equal(c.compose(h, span.d), span.q), "extension does not restrict");
      ++spans;
    }
    auto v = is_sheaf(d, sa.s, bijective_spans(d, sa.s, full));
    o.require(v.sheaf() && v.exhaustive, "S_A not a sheaf for " + c.object_name(a) + ":\n" + v.report.to_text());
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::size_t n = 0;
  auto a = sheafification_theorem(*finset_sub().doctrine, finset_sub().objects, n);
  o.require(a.pass, a.detail);
  auto b = sheafification_theorem(*boolean_pers().doctrine, boolean_pers().objects, n);
  o.require(b.pass, b.detail);
  if (o.pass) o.detail = std::to_string(n) + " spans extended";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto& fx = boolean_pers();
  const auto& d = per_of(fx);
  const Category& c = d.base();
  const auto& probes = fx.objects;
  LawScope scope{probes};
  std::size_t sheaves = 0;
  for (ObjectId a : probes) {
    const bool sheaf = is_sheaf(d, a, bijective_spans(d, a, probes)).sheaf();
    const auto complete = is_complete(d, a, probes, scope);
    o.require(complete.exhaustive, "completeness sampled at " + c.object_name(a));
    o.require(sheaf == complete.complete, "sheaf and complete differ at " + c.object_name(a));
    sheaves += sheaf;
    const auto sa = sheafify_object(d, a, probes, scope);
    const auto map = build_map_category(d, {a, sa.s}, LawScope{{a, sa.s}});
    o.require(map.report().ok(), "Map category laws:\n" + map.report().to_text());
    o.require(map.inverse(a, sa.s, graph_of(d, sa.eta)).has_value(), "graph of eta not a Map iso at " + c.object_name(a));
  }
  auto refl = reflector(d, probes, scope);
  auto eq = check_equivalences(d, refl, probes, scope);
  o.require(eq.ok(), "equivalences:\n" + eq.to_text());
  if (o.pass) o.detail = std::to_string(sheaves) + " of " + std::to_string(probes.size()) + " probes are sheaves";
  return o;
}

// Bitmask oracle over the powerset of {p, q}: p = 1, q = 2.
std::vector<std::array<unsigned, 2>> functional_from_point(const std::array<unsigned, 4>& rho) {
  std::vector<std::array<unsigned, 2>> out;
  for (unsigned f0 = 0; f0 < 4; ++f0) {
    for (unsigned f1 = 0; f1 < 4; ++f1) {
      const unsigned f[2] = {f0, f1};
      bool ok = (f0 | f1) == 3;  // total
      for (int a = 0; a < 2 && ok; ++a) {
        ok = (f[a] & ~rho[a * 3]) == 0;  // strict
        for (int b = 0; b < 2 && ok; ++b) {
          ok = ((f[a] & rho[a * 2 + b]) & ~f[b]) == 0  // extensional
               && ((f[a] & f[b]) & ~rho[a * 2 + b]) == 0;  // single-valued
        }
      }
      if (ok) out.push_back({f0, f1});
    }
  }
  return out;
}

Outcome criterion7() {
  Outcome o;
  const auto& fx = boolean_pers();
  const auto& d = per_of(fx);
  const auto& c = d.pers();
  const ObjectId one = *c.terminal();
  const ObjectId a = d.object({2, {1, 0, 0, 2}});
  const auto& probes = fx.objects;
  LawScope scope{probes};

  const auto oracle = functional_from_point({1, 0, 0, 2});
  std::set<Elem> library;
  const ObjectId oa = require_product(c, one, a).object;
  const auto fib = d.fiber(oa);
  for (const auto& f : *fib) {
    if (is_functional(d, one, a, f).functional()) library.insert(f);
  }
  std::set<Elem> expected;
  for (const auto& f : oracle) expected.insert(Elem{static_cast<Value>(f[0]), static_cast<Value>(f[1])});
  o.require(library == expected, "functional relations from 1 differ from the oracle");
  o.require(expected == std::set<Elem>{Elem{1, 2}}, "oracle does not single out ({p},{q})");
  // No x has rho(x,x) = top, so A has no global points.
  o.require(c.hom(one, a, kDefaultBudget)->empty(), "A has a global point");

  const auto complete = is_complete(d, a, probes, scope);
  o.require(!complete.complete, "A certified complete");
  o.require(complete.counterexample && complete.counterexample->source == one &&
                complete.counterexample->formula == Elem({1, 2}),
            "counterexample is not ({p},{q}) from 1");
  o.require(!is_sheaf(d, a, bijective_spans(d, a, probes)).sheaf(), "A certified a sheaf");
  const auto sa = sheafify_object(d, a, probes, scope);
  o.require(sa.eta_bijective, "eta not bijective");
  o.require(!find_inverse(c, sa.eta), "eta is an iso");
  std::vector<ObjectId> full = probes;
  full.push_back(sa.s);
  o.require(is_sheaf(d, sa.s, bijective_spans(d, sa.s, full)).sheaf(), "S_A not a sheaf");
  if (o.pass) o.detail = "F = ({p},{q}) over 1 x " + c.object_name(a);
  return o;
}

Outcome criterion8() {
  Outcome o;
  const Fixture fx = gen_fixture({"arrow-presheaf", "bool2", {2}, 2, "double-negation"});
  o.require(fx.build_report.ok(), "closure:\n" + fx.build_report.to_text());
  const auto& d = *fx.doctrine;
  std::vector<ObjectId> sheaves;
  for (ObjectId a : fx.objects) {
    auto v = is_sheaf(d, a, bijective_spans(d, a, fx.objects));
    o.require(v.exhaustive, "sheaf scan sampled");
    if (v.sheaf()) sheaves.push_back(a);
  }
  const auto& arrows = static_cast<const PresheafSubDoctrine&>(*fx.base).arrows();
  const auto oracle = dense_orthogonal_objects(arrows, fx.objects);
  o.require(sheaves == oracle, "Shv differs from the orthogonality class");
  if (o.pass) {
    o.detail = std::to_string(sheaves.size()) + " of " + std::to_string(fx.objects.size()) + " objects:";
    for (ObjectId a : sheaves) o.detail += " " + arrows.object_name(a);
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  const Fixture fx = gen_fixture({"per", "chain3", {1, 2}, 2});
  o.require(fx.build_report.ok(), "build:\n" + fx.build_report.to_text());
  const auto& d = per_of(fx);
  auto t = check_topos_correspondence(d, fx.objects, LawScope{fx.objects});
  o.require(t.report.ok(), "correspondence:\n" + t.report.to_text());
  if (o.pass) {
    o.detail = std::to_string(t.sheaves.size()) + " sheaves among " + std::to_string(fx.objects.size()) + " probes";
  }
  return o;
}

// ------------------------------------------------------------ criterion 10

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  Run r;
  const std::string cmd = std::string(DOCTRINA_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int s = pclose(p);
  r.status = WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  return r;
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

Outcome criterion10() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("doctrina-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);

  // Round trip: load, serialize, load, serialize gives the same bytes.
  std::vector<std::pair<std::string, json>> files;
  files.push_back({"finset-sub", generated_to_json({"finset-sub"})});
  files.push_back({"localic", generated_to_json({"localic", "chain3", {1, 2, 4}})});
  files.push_back({"arrow-presheaf", generated_to_json({"arrow-presheaf", "bool2", {2}, 2, "double-negation"})});
  files.push_back({"per", generated_to_json({"per", "boolpq", {1, 2}, 2})});
  for (const char* n : {"corrupted-reindex", "delta-top", "forall-as-exists", "mem-top", "non-associative"}) {
    files.push_back({n, table_to_json(planted_defect(n))});
  }
  {
    LocalicDoctrine base(FiniteHeytingAlgebra::chain(3));
    files.push_back({"tabulated", table_to_json(tabulate_doctrine(base, {base.object(1), base.object(2)}))});
  }
  for (const auto& [name, j] : files) {
    const std::string first = dump(to_json(load_doctrine(j)));
    const std::string second = dump(to_json(load_doctrine(json::parse(first))));
    o.require(first == second && first == dump(j), "round trip changed " + name);
  }

  // Deterministic reports on a sampled run.
  const fs::path localic = dir / "localic.doc";
  o.require(run_cli("fixture localic -o " + quoted(localic)).status == 0, "fixture localic failed");
  const auto r1 = run_cli("check " + quoted(localic) + " --report json --seed 7 --budget 4096");
  const auto r2 = run_cli("check " + quoted(localic) + " --report json --seed 7 --budget 4096");
  o.require(r1.status == 0 && r1.out == r2.out, "check reports differ between identical runs");
  o.require(r1.out.find("\"sampled\": true") != std::string::npos, "budgeted run did not sample");

  // Planted defects: named failure class, exit 1.
  struct Plant {
    std::string fixture;
    std::string laws;
    std::string failure;
  };
  const std::vector<Plant> plants = {
      {"planted-corrupted-reindex", "doctrine", "functoriality"},
      {"planted-delta-top", "equality", "substitutivity"},
      {"planted-forall-as-exists", "first-order", "forall adjunction"},
      {"planted-mem-top", "power", "power object: multiple solutions"},
      {"planted-non-associative", "category", "associativity"},
      {"localic --nucleus 0,0,2", "closure", "not inflationary"},
      {"localic --algebra boolpqr --sizes 1,2 --nucleus 0,1,2,7,4,7,7,7", "existential", "Frobenius"},
  };
  std::size_t i = 0;
  for (const auto& p : plants) {
    const fs::path file = dir / ("plant" + std::to_string(i++) + ".doc");
    o.require(run_cli("fixture " + p.fixture + " -o " + quoted(file)).status == 0, "fixture " + p.fixture);
    const auto r = run_cli("check " + quoted(file) + " --laws " + p.laws + " --report json");
    o.require(r.status == 1, p.fixture + ": exit " + std::to_string(r.status) + ", expected 1");
    o.require(r.out.find("\"law\": \"" + p.failure + "\"") != std::string::npos, p.fixture + ": no " + p.failure);
  }
  const fs::path broken = dir / "missing-composite.doc";
  run_cli("fixture planted-missing-composite -o " + quoted(broken));
  const auto rb = run_cli("check " + quoted(broken));
  o.require(rb.status == 2 && rb.out.find("composition not total at (") != std::string::npos,
            "missing composite: exit " + std::to_string(rb.status));

  fs::remove_all(dir);
  if (o.pass) o.detail = std::to_string(files.size()) + " files round-tripped, " + std::to_string(plants.size()) + " plants";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    Outcome (*run)();
  };
  std::vector<Criterion> criteria = {
      {1, "law suites on finset-sub and localic chain3", 60, criterion1},
      {2, "internal injectivity/surjectivity vs mono/epi", 30, criterion2},
      {3, "singletons, unit bijectivity, membership identity", 120, criterion3},
      {4, "tabulation of functional relations", 120, criterion4},
      {5, "extension along bijections, reflector, S_A sheaves", 180, criterion5},
      {6, "sheaf iff complete, unit graph iso in Map", 120, criterion6},
      {7, "diag(p,q) is neither complete nor a sheaf", 60, criterion7},
      {8, "double-negation sheaves vs dense-mono orthogonality", 300, criterion8},
      {9, "topos correspondence on the chain3 PER completion", 300, criterion9},
      {10, "serialization, deterministic reports, planted defects", 300, criterion10},
  };
  // Criterion numbers on the command line restrict the run.
  if (argc > 1) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    std::erase_if(criteria, [&](const Criterion& c) { return !only.count(c.id); });
  }
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > c.limit) {
      o.pass = false;
      o.detail = "over the time limit";
    }
    failed += !o.pass;
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << std::fixed
         << std::setprecision(1) << secs << " s / " << c.limit << " s)";
    if (!o.detail.empty()) line << " - " << o.detail;
    std::cout << line.str() << std::endl;
  }
  return failed ? 1 : 0;
}
