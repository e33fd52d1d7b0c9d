#include "doctrina/sheafify.hpp"

#include <algorithm>

#include "doctrina/error.hpp"
#include "doctrina/intlang.hpp"

namespace doctrina {

namespace {

std::size_t count_factorizations(const Category& c, const Morphism& through, const Morphism& target,
                                 ObjectId via, std::uint64_t budget) {
  auto hs = c.hom(via, target.cod, budget);
  if (!hs) throw PreconditionFailed("hom scan exceeds budget");
  std::size_t n = 0;
  for (const auto& k : *hs) {
    if (c.equal(c.compose(k, through), target)) ++n;
  }
  return n;
}

}  // namespace

SheafificationResult sheafify_object(const Doctrine& d, ObjectId a, const std::vector<ObjectId>& probes,
                                     const LawScope& scope) {
  const Category& c = d.base();
  SheafificationResult r;
  r.a = a;
  r.singletons = check_singletons(d, a, probes, scope);
  if (!r.singletons.ok()) {
    std::string why = r.singletons.report.entries().empty() ? "" : ": " + r.singletons.report.entries().front().law;
    throw PreconditionFailed("singletons-precondition-failed for " + c.object_name(a) + why);
  }
  r.power = *d.power_object(a);
  r.s = r.singletons.s;
  r.incl = r.singletons.image->incl;
  r.eta = r.singletons.eta;
  r.report.merge(r.singletons.report);
  const std::string an = c.object_name(a);

  if (!c.equal(c.compose(r.incl, r.eta), r.singletons.singleton)) {
    r.report.add("unit does not factor the singleton map", an, Severity::theorem);
  }
  r.eta_bijective = internal_bijectivity(d, r.eta).bijective();
  if (!r.eta_bijective) r.report.add("unit not internally bijective", an, Severity::theorem);

  const Elem lhs = d.reindex(cross(c, r.eta, c.identity(r.s)), d.equality(r.s));
  const Elem rhs = d.reindex(cross(c, c.identity(a), r.incl), r.power.mem);
  r.membership_identity = lhs == rhs;
  if (!r.membership_identity) {
    r.report.add("membership identity", an + ": " + d.render(require_product(c, a, r.s).object, lhs) + " vs " +
                                            d.render(require_product(c, a, r.s).object, rhs),
                 Severity::theorem);
  }
  return r;
}

Morphism tabulate_functional(const Doctrine& d, const SheafificationResult& sa, ObjectId y, const Elem& f,
                             ValidationReport& incidents, std::uint64_t budget) {
  const Category& c = d.base();
  const std::string w = c.object_name(y) + ":" + d.render(require_product(c, y, sa.a).object, f);
  // The power object was verified on the probes when S_A was built, so a
  // declared transpose only needs its equation checked here.
  const Elem gamma = opposite(d, y, sa.a, f);
  std::optional<Morphism> declared;
  if (sa.power.transpose) declared = sa.power.transpose(y, gamma);
  const Morphism g = declared && transpose_back(d, sa.power, *declared) == gamma
                         ? c.canonical(*declared)
                         : lambda(d, sa.power, y, gamma, budget);
  auto h = c.factor_through(sa.incl, g, budget);
  if (!h) {
    incidents.add("factorization-failure", w, Severity::theorem);
    throw WitnessFailure("factorization-failure for " + w);
  }
  const Elem& delta_s = d.equality(sa.s);
  if (d.reindex(cross(c, *h, sa.eta), delta_s) != f) incidents.add("tabulation identity", w, Severity::theorem);
  auto hs = c.hom(y, sa.s, budget);
  if (!hs) throw PreconditionFailed("hom scan exceeds budget");
  std::size_t n = 0;
  for (const auto& k : *hs) {
    if (d.reindex(cross(c, k, sa.eta), delta_s) == f) ++n;
  }
  if (n != 1) incidents.add("tabulation not unique", w + " (" + std::to_string(n) + ")", Severity::theorem);
  return *h;
}

Elem xi_relation(const Doctrine& d, const SheafificationResult& sa, const Morphism& dm, const Morphism& q) {
  const Category& c = d.base();
  const auto inner = require_product(c, dm.cod, sa.a);
  const auto outer = require_product(c, inner.object, dm.dom);
  const Morphism py = c.compose(inner.p1, outer.p1);
  const Morphism pa = c.compose(inner.p2, outer.p1);
  const Morphism& px = outer.p2;
  const Elem ey = d.reindex(pair(c, py, c.compose(dm, px)), d.equality(dm.cod));
  const Elem es = d.reindex(pair(c, c.compose(q, px), c.compose(sa.eta, pa)), d.equality(sa.s));
  return d.exists(outer.p1, d.meet(outer.object, ey, es));
}

Elem xi_relation_text(const Doctrine& d, const SheafificationResult& sa, const Morphism& dm, const Morphism& q) {
  const Category& c = d.base();
  Signature sig;
  sig.add_sort("Y", dm.cod);
  sig.add_sort("A", sa.a);
  sig.add_sort("X", dm.dom);
  sig.add_sort("S", sa.s);
  sig.add_function("d", dm);
  sig.add_function("q", q);
  sig.add_function("eta", sa.eta);
  const TypingContext ctx(c, {{"y", dm.cod}, {"a", sa.a}});
  return evaluate(d, sig, ctx, parse_formula("E x:X. y = d(x) & q(x) = eta(a)", sig));
}

Morphism extend_along_bijective(const Doctrine& d, const SheafificationResult& sa, const Morphism& dm,
                                const Morphism& q, ValidationReport& incidents, std::uint64_t budget) {
  const Category& c = d.base();
  if (q.cod != sa.s || q.dom != dm.dom) throw PreconditionFailed("span does not end in S_A");
  if (!internal_bijectivity(d, dm).bijective()) {
    throw PreconditionFailed("bijectivity-precondition-failed: " + c.morphism_name(dm));
  }
  const std::string w = "(" + c.morphism_name(dm) + "," + c.morphism_name(q) + ")";
  const Elem xi = xi_relation(d, sa, dm, q);
  if (xi_relation_text(d, sa, dm, q) != xi) incidents.add("xi cross-check", w);
  if (!is_functional(d, dm.cod, sa.a, xi).functional()) {
    incidents.add("extension relation not functional", w, Severity::theorem);
    throw WitnessFailure("extension relation not functional for " + w);
  }
  const Morphism h = tabulate_functional(d, sa, dm.cod, xi, incidents, budget);
  if (!c.equal(c.compose(h, dm), q)) {
    incidents.add("extension does not restrict", w, Severity::theorem);
    throw WitnessFailure("extension does not restrict for " + w);
  }
  const std::size_t n = count_factorizations(c, dm, q, dm.cod, budget);
  if (n != 1) incidents.add("extension not unique", w + " (" + std::to_string(n) + ")", Severity::theorem);
  return h;
}

Morphism ReflectionData::reflect(const Doctrine& d, const Morphism& f, std::uint64_t budget) const {
  const auto& sa = units.at(f.dom);
  const auto& sb = units.at(f.cod);
  ValidationReport scratch;
  return extend_along_bijective(d, sb, sa.eta, d.base().compose(sb.eta, f), scratch, budget);
}

ReflectionData reflector(const Doctrine& d, const std::vector<ObjectId>& objects, const LawScope& scope) {
  const Category& c = d.base();
  ReflectionData refl;
  auto& r = refl.report;
  for (ObjectId a : objects) {
    try {
      auto u = sheafify_object(d, a, objects, scope);
      r.merge(u.report);
      refl.units.emplace(a, std::move(u));
    } catch (const PreconditionFailed& e) {
      r.add("sheafification unsupported", e.what());
    }
  }

  std::vector<ObjectId> all = objects;
  for (const auto& [a, u] : refl.units) all.push_back(u.s);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  for (ObjectId z : all) {
    auto v = is_sheaf(d, z, bijective_spans(d, z, all, scope.budget), scope.budget);
    refl.sheaves[z] = v.sheaf();
  }
  for (const auto& [a, u] : refl.units) {
    if (!refl.sheaves[u.s]) r.add("S_A not a sheaf", c.object_name(a), Severity::theorem);
  }

  for (const auto& [a, u] : refl.units) {
    for (const auto& [z, sheaf] : refl.sheaves) {
      if (!sheaf) continue;
      auto qs = c.hom(a, z, scope.budget);
      if (!qs) throw PreconditionFailed("hom scan exceeds budget");
      for (const auto& q : *qs) {
        const std::size_t n = count_factorizations(c, u.eta, q, u.s, scope.budget);
        if (n != 1) {
          r.add("unit not universal", "(" + c.object_name(a) + "," + c.morphism_name(q) + ") " + std::to_string(n),
                Severity::theorem);
        }
      }
    }
  }

  for (const auto& [a, ua] : refl.units) {
    for (const auto& [b, ub] : refl.units) {
      auto fs = c.hom(a, b, scope.budget);
      if (!fs) throw PreconditionFailed("hom scan exceeds budget");
      for (const auto& f : *fs) {
        try {
          const Morphism sf = extend_along_bijective(d, ub, ua.eta, c.compose(ub.eta, f), r, scope.budget);
          if (!c.equal(c.compose(sf, ua.eta), c.compose(ub.eta, f))) {
            r.add("unit not natural", c.morphism_name(f), Severity::theorem);
          }
        } catch (const WitnessFailure&) {
          // already recorded as an incident
        }
      }
    }
  }
  return refl;
}

ValidationReport check_equivalences(const Doctrine& d, const ReflectionData& refl,
                                    const std::vector<ObjectId>& probes, const LawScope& scope) {
  const Category& c = d.base();
  ValidationReport r;
  if (probes.empty()) {
    r.note("no probes");
    return r;
  }
  for (ObjectId a : probes) {
    auto ui = refl.units.find(a);
    if (ui == refl.units.end()) {
      r.add("sheafification unsupported", c.object_name(a));
      continue;
    }
    const auto& u = ui->second;
    auto si = refl.sheaves.find(a);
    const bool sheaf = si != refl.sheaves.end()
                           ? si->second
                           : is_sheaf(d, a, bijective_spans(d, a, probes, scope.budget), scope.budget).sheaf();

    if (sheaf) {
      auto inv = find_inverse(c, u.eta, scope.budget);
      if (!inv) {
        r.add("unit of a sheaf not iso", c.object_name(a), Severity::theorem);
      } else {
        for (ObjectId y : probes) {
          const ObjectId ya = require_product(c, y, a).object;
          for (const auto& f : sweep_fiber(d, ya, scope, r)) {
            if (!is_functional(d, y, a, f).functional()) continue;
            const Morphism h = c.compose(*inv, tabulate_functional(d, u, y, f, r, scope.budget));
            if (graph_of(d, h) != f) {
              r.add("sheaf not complete", c.object_name(y) + ":" + d.render(ya, f), Severity::theorem);
            }
          }
        }
      }
    }

    const Elem g = graph_of(d, u.eta);
    if (!relation_inverse(d, a, u.s, g)) {
      r.add("graph of unit not a Map isomorphism", c.object_name(a), Severity::theorem);
    }
    auto complete = is_complete(d, u.s, probes, scope);
    if (!complete.complete) r.add("S_A not complete", c.object_name(a), Severity::theorem);
    if (!complete.exhaustive) r.mark_sampled();
  }
  return r;
}

}  // namespace doctrina
