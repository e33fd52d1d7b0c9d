#include "doctrina/powerobj.hpp"

#include <map>
#include <string_view>

#include "doctrina/error.hpp"

namespace doctrina {

Elem transpose_back(const Doctrine& d, const PowerObjectWitness& w, const Morphism& g) {
  const Category& c = d.base();
  return d.reindex(cross(c, c.identity(w.x), g), w.mem);
}

Morphism lambda(const Doctrine& d, const PowerObjectWitness& w, ObjectId y, const Elem& gamma,
                std::uint64_t budget) {
  const Category& c = d.base();
  const std::string where = " for " + d.render(require_product(c, w.x, y).object, gamma) + " over " +
                            c.object_name(w.x) + " x " + c.object_name(y);
  std::optional<Morphism> declared;
  if (w.transpose) declared = w.transpose(y, gamma);
  if (auto hs = c.hom(y, w.px, budget)) {
    std::optional<Morphism> found;
    std::size_t n = 0;
    for (const auto& g : *hs) {
      if (transpose_back(d, w, g) != gamma) continue;
      if (!found) found = g;
      ++n;
    }
    if (n == 0) throw WitnessFailure("no solution" + where);
    if (n > 1) throw WitnessFailure("multiple solutions" + where);
    if (declared && c.canonical(*declared) != *found) throw WitnessFailure("transpose disagrees with scan" + where);
    return *found;
  }
  if (!w.transpose) throw PreconditionFailed("probe-too-large: hom(" + c.object_name(y) + ", PX) exceeds budget");
  if (!declared || transpose_back(d, w, *declared) != gamma) throw WitnessFailure("no solution" + where);
  return *declared;
}

ValidationReport verify_power_object(const Doctrine& d, const PowerObjectWitness& w,
                                     const std::vector<ObjectId>& probes, const LawScope& scope) {
  const Category& c = d.base();
  ValidationReport r;
  for (ObjectId y : probes) {
    const ObjectId xy = require_product(c, w.x, y).object;
    auto hs = c.hom(y, w.px, scope.budget);
    if (!hs) {
      // Without the hom-set only the declared transpose can be checked.
      for (const auto& gamma : sweep_fiber(d, xy, scope, r)) {
        try {
          lambda(d, w, y, gamma, scope.budget);
        } catch (const WitnessFailure& e) {
          r.add(std::string_view(e.what()).starts_with("no") ? "power object: no solution"
                                                              : "power object: transpose",
                c.object_name(y) + ":" + d.render(xy, gamma));
        } catch (const PreconditionFailed& e) {
          r.add("probe-too-large", e.what(), Severity::scope);
          break;
        }
      }
      r.add("probe-too-large", "hom(" + c.object_name(y) + ", PX)", Severity::scope);
      continue;
    }
    // One pass over hom(Y, PX) gives every solution of every gamma at once.
    std::map<Elem, std::vector<std::size_t>> solutions;
    for (std::size_t i = 0; i < hs->size(); ++i) solutions[transpose_back(d, w, (*hs)[i])].push_back(i);
    for (const auto& gamma : sweep_fiber(d, xy, scope, r)) {
      auto it = solutions.find(gamma);
      const std::string at = c.object_name(y) + ":" + d.render(xy, gamma);
      if (it == solutions.end()) {
        r.add("power object: no solution", at);
      } else if (it->second.size() > 1) {
        r.add("power object: multiple solutions", at);
      } else if (w.transpose) {
        auto declared = w.transpose(y, gamma);
        if (!declared || c.canonical(*declared) != (*hs)[it->second.front()]) r.add("power object: transpose", at);
      }
    }
    for (const auto& [gamma, gs] : solutions) {
      if (gs.size() > 1) {
        for (auto i : gs) r.add("power object: uniqueness law", c.morphism_name((*hs)[i]));
      }
    }
  }
  return r;
}

SingletonsReport check_singletons(const Doctrine& d, ObjectId a, const std::vector<ObjectId>& probes,
                                  const LawScope& scope) {
  const Category& c = d.base();
  SingletonsReport s;
  s.a = a;
  auto& r = s.report;
  const std::string an = c.object_name(a);
  auto w = d.power_object(a);
  if (!w) {
    r.add("singletons (i): no power object", an);
    return s;
  }
  s.pa = w->px;
  const auto pv = verify_power_object(d, *w, probes, scope);
  r.merge(pv);
  s.power_object = pv.ok();
  if (pv.sampled()) s.exhaustive = false;
  if (!s.power_object) return s;

  try {
    s.singleton = lambda(d, *w, a, d.equality(a), scope.budget);
  } catch (const WitnessFailure& e) {
    r.add("singletons (i): no transpose of delta", e.what());
    s.power_object = false;
    return s;
  }
  s.sigma = d.exists(s.singleton, d.top(a));
  s.injective = internal_bijectivity(d, s.singleton).injective;
  if (!s.injective) r.add("singletons (ii): {delta} not internally injective", an);

  std::vector<ObjectId> image_probes = probes;
  image_probes.push_back(a);
  s.image = find_comprehension(d, s.pa, s.sigma, image_probes, scope.budget);
  s.has_image = s.image.has_value();
  if (!s.has_image) {
    r.add("singletons (ii): missing image", an);
  } else {
    s.s = s.image->incl.dom;
    auto eta = c.factor_through(s.image->incl, s.singleton, scope.budget);
    if (!eta) {
      s.has_image = false;
      r.add("singletons (ii): {delta} does not factor through its image", an);
    } else {
      s.eta = *eta;
    }
  }

  s.condition_iii = true;
  for (ObjectId y : probes) {
    auto gs = c.hom(y, s.pa, scope.budget);
    if (!gs) {
      s.exhaustive = false;
      r.add("probe-too-large", "condition (iii) from " + c.object_name(y), Severity::scope);
      continue;
    }
    const Morphism sw = swap(c, y, a);
    for (const auto& g : *gs) {
      const Elem f = d.reindex(sw, transpose_back(d, *w, g));
      const bool functional = is_functional(d, y, a, f).functional();
      const bool covered = d.reindex(g, s.sigma) == d.top(y);
      if (functional != covered) {
        s.condition_iii = false;
        r.add("singletons (iii)", "(" + c.object_name(y) + "," + c.morphism_name(g) + ")");
      }
    }
  }
  return s;
}

}  // namespace doctrina
