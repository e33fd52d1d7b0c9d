#include "doctrina/doctrine.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "doctrina/error.hpp"

namespace doctrina {

namespace {

constexpr std::size_t kSampleCount = 256;

// Elements of a fiber, or a seeded sample when the fiber exceeds the budget.
struct FiberView {
  std::vector<Elem> elems;
  bool complete = true;
};

FiberView view(const Doctrine& d, ObjectId a, const LawScope& scope, ValidationReport& r) {
  FiberView v;
  if (auto f = d.fiber(a, scope.budget)) {
    v.elems = std::move(*f);
    return v;
  }
  v.complete = false;
  std::mt19937_64 rng(scope.seed ^ (std::uint64_t{a} * 0x9e3779b97f4a7c15ULL));
  for (std::size_t i = 0; i < kSampleCount; ++i) {
    if (auto e = d.sample_element(a, rng)) v.elems.push_back(std::move(*e));
  }
  std::sort(v.elems.begin(), v.elems.end());
  v.elems.erase(std::unique(v.elems.begin(), v.elems.end()), v.elems.end());
  if (v.elems.empty()) v.elems.push_back(d.top(a));
  r.mark_sampled();
  r.note("fiber over " + d.base().object_name(a) + " exceeds budget; verified up to scope on " +
         std::to_string(v.elems.size()) + " sampled elements");
  return v;
}

// Streams P(a) through `check` without storing it. When the fiber turns out
// to exceed the budget the partial findings are dropped and the check runs on
// the seeded sample instead.
void sweep_streaming(const Doctrine& d, ObjectId a, const LawScope& scope, ValidationReport& r,
                     const std::function<void(const Elem&, ValidationReport&)>& check) {
  ValidationReport streamed;
  if (d.for_each_element(a, scope.budget, [&](const Elem& e) { check(e, streamed); })) {
    r.merge(streamed);
    return;
  }
  for (const auto& e : view(d, a, scope, r).elems) check(e, r);
}

std::string mname(const Doctrine& d, const Morphism& m) { return d.base().morphism_name(m); }

}  // namespace

std::vector<Elem> sweep_fiber(const Doctrine& d, ObjectId a, const LawScope& scope, ValidationReport& r) {
  return view(d, a, scope, r).elems;
}

std::optional<Elem> Doctrine::sample_element(ObjectId a, std::mt19937_64& rng) const {
  auto f = fiber(a, 4096);
  if (!f || f->empty()) return std::nullopt;
  return (*f)[std::uniform_int_distribution<std::size_t>(0, f->size() - 1)(rng)];
}

Elem Doctrine::exists(const Morphism& f, const Elem& x) const {
  auto fib = fiber(f.cod);
  if (!fib) throw PreconditionFailed("fiber over " + base().object_name(f.cod) + " exceeds budget");
  Elem out = top(f.cod);
  Elem pulled;
  for (const auto& b : *fib) {
    reindex_into(f, b, pulled);
    if (leq(f.dom, x, pulled)) out = meet(f.cod, out, b);
  }
  return out;
}

std::optional<std::vector<Elem>> Doctrine::fiber(ObjectId a, std::uint64_t budget) const {
  std::vector<Elem> out;
  if (!for_each_element(a, budget, [&](const Elem& e) { out.push_back(e); })) return std::nullopt;
  return out;
}

const Elem& Doctrine::equality(ObjectId a) const {
  {
    std::lock_guard g(lock_.mutex);
    auto it = delta_cache_.find(a);
    if (it != delta_cache_.end()) return it->second;
  }
  Elem delta = exists(diagonal(base(), a), top(a));
  std::lock_guard g(lock_.mutex);
  return delta_cache_.emplace(a, std::move(delta)).first->second;
}

Elem Doctrine::bottom(ObjectId a, std::uint64_t budget) const {
  auto fib = fiber(a, budget);
  if (!fib) throw PreconditionFailed("fiber over " + base().object_name(a) + " exceeds budget");
  Elem out = top(a);
  for (const auto& x : *fib) out = meet(a, out, x);
  return out;
}

std::vector<Morphism> morphisms_among(const Category& c, const std::vector<ObjectId>& objects,
                                      std::uint64_t budget) {
  std::vector<Morphism> out;
  for (ObjectId x : objects) {
    for (ObjectId y : objects) {
      auto hs = c.hom(x, y, budget);
      if (!hs) {
        throw PreconditionFailed("hom(" + c.object_name(x) + "," + c.object_name(y) + ") exceeds budget");
      }
      out.insert(out.end(), hs->begin(), hs->end());
    }
  }
  return out;
}

ValidationReport validate_doctrine(const Doctrine& d, const LawScope& scope) {
  ValidationReport r;
  const Category& c = d.base();
  std::map<ObjectId, FiberView> fibers;
  for (ObjectId a : scope.objects) fibers.emplace(a, view(d, a, scope, r));

  for (ObjectId a : scope.objects) {
    const auto& fib = fibers.at(a).elems;
    const Elem t = d.top(a);
    if (!d.in_fiber(a, t)) r.add("top not in fiber", c.object_name(a));
    const bool cubic = fib.size() * fib.size() * fib.size() <= 4 * scope.budget;
    for (const auto& x : fib) {
      if (!d.leq(a, x, t)) r.add("top not maximum", d.render(a, x));
      for (const auto& y : fib) {
        const Elem m = d.meet(a, x, y);
        if (!d.in_fiber(a, m) || !d.leq(a, m, x) || !d.leq(a, m, y)) {
          r.add("meet not lower bound", "(" + d.render(a, x) + "," + d.render(a, y) + ")");
          continue;
        }
        if (!cubic) continue;
        for (const auto& z : fib) {
          if (d.leq(a, z, x) && d.leq(a, z, y) && !d.leq(a, z, m)) {
            r.add("meet not greatest lower bound", "(" + d.render(a, x) + "," + d.render(a, y) + ")");
            break;
          }
        }
      }
    }
    if (!cubic) r.note("meet maximality over " + c.object_name(a) + " skipped: fiber too large");
    const Morphism id = c.identity(a);
    for (const auto& x : fib) {
      if (d.reindex(id, x) != x) r.add("functoriality (identity)", "(" + mname(d, id) + "," + d.render(a, x) + ")");
    }
  }

  const auto ms = morphisms_among(c, scope.objects, scope.budget);
  std::map<ObjectId, std::vector<const Morphism*>> out_of;
  for (const auto& m : ms) out_of[m.dom].push_back(&m);

  Elem fx, gx, fgx, lhs;
  for (const auto& f : ms) {
    const auto& fib = fibers.at(f.cod).elems;
    if (d.reindex(f, d.top(f.cod)) != d.top(f.dom)) r.add("reindex does not preserve top", mname(d, f));
    const bool quadratic = fib.size() * fib.size() <= 4 * scope.budget;
    for (std::size_t i = 0; i < fib.size(); ++i) {
      d.reindex_into(f, fib[i], fx);
      if (!d.in_fiber(f.dom, fx)) {
        r.add("reindex leaves fiber", "(" + mname(d, f) + "," + d.render(f.cod, fib[i]) + ")");
        continue;
      }
      const std::size_t stop = quadratic ? fib.size() : std::min(fib.size(), i + 8);
      for (std::size_t j = i; j < stop; ++j) {
        d.reindex_into(f, fib[j], gx);
        d.reindex_into(f, d.meet(f.cod, fib[i], fib[j]), lhs);
        if (lhs != d.meet(f.dom, fx, gx)) {
          r.add("reindex does not preserve meets",
                "(" + mname(d, f) + "," + d.render(f.cod, fib[i]) + "," + d.render(f.cod, fib[j]) + ")");
        }
      }
    }
    // reindex(g.f) = reindex(f) . reindex(g)
    for (const Morphism* g : out_of[f.cod]) {
      const Morphism gf = c.compose(*g, f);
      for (const auto& x : fibers.at(g->cod).elems) {
        d.reindex_into(*g, x, gx);
        d.reindex_into(f, gx, fgx);
        d.reindex_into(gf, x, lhs);
        if (lhs != fgx) {
          r.add("functoriality", "(" + mname(d, f) + "," + mname(d, *g) + "," + d.render(g->cod, x) + ")");
        }
      }
    }
  }
  return r;
}

Elem exists_along(const Doctrine& d, const Morphism& f, const Elem& alpha, std::uint64_t budget) {
  auto fib = d.fiber(f.cod, budget);
  if (!fib) return d.exists(f, alpha);
  Elem out = d.top(f.cod);
  Elem pulled;
  for (const auto& b : *fib) {
    d.reindex_into(f, b, pulled);
    if (d.leq(f.dom, alpha, pulled)) out = d.meet(f.cod, out, b);
  }
  if (d.declares_exists()) {
    const Elem declared = d.exists(f, alpha);
    if (declared != out) {
      throw WitnessFailure("table-disagreement: exists along " + mname(d, f) + " of " +
                           d.render(f.dom, alpha) + " declared " + d.render(f.cod, declared) +
                           ", computed " + d.render(f.cod, out));
    }
  }
  return out;
}

ValidationReport check_existential_laws(const Doctrine& d, const LawScope& scope) {
  ValidationReport r;
  const Category& c = d.base();
  std::map<ObjectId, FiberView> fibers;
  auto fib_of = [&](ObjectId a) -> const std::vector<Elem>& {
    auto it = fibers.find(a);
    if (it == fibers.end()) it = fibers.emplace(a, view(d, a, scope, r)).first;
    return it->second.elems;
  };
  const auto ms = morphisms_among(c, scope.objects, scope.budget);

  // Adjunction and Frobenius share the pulled-back codomain fiber.
  std::vector<Elem> pulled;
  for (const auto& f : ms) {
    const auto& fa = fib_of(f.dom);
    const auto& fb = fib_of(f.cod);
    pulled.resize(fb.size());
    for (std::size_t j = 0; j < fb.size(); ++j) d.reindex_into(f, fb[j], pulled[j]);
    for (const auto& alpha : fa) {
      const Elem e = d.exists(f, alpha);
      if (!d.in_fiber(f.cod, e)) {
        r.add("exists leaves fiber", "(" + mname(d, f) + "," + d.render(f.dom, alpha) + ")");
        continue;
      }
      for (std::size_t j = 0; j < fb.size(); ++j) {
        if (d.leq(f.cod, e, fb[j]) != d.leq(f.dom, alpha, pulled[j])) {
          r.add("adjunction", "(" + mname(d, f) + "," + d.render(f.dom, alpha) + "," + d.render(f.cod, fb[j]) + ")");
        }
        const Elem lhs = d.exists(f, d.meet(f.dom, alpha, pulled[j]));
        if (lhs != d.meet(f.cod, e, fb[j])) {
          r.add("Frobenius", "(" + mname(d, f) + "," + d.render(f.dom, alpha) + "," + d.render(f.cod, fb[j]) + ")");
        }
      }
    }
  }

  // Beck-Chevalley: exists_top . left* = f* . exists_k.
  auto check_square = [&](const PullbackWitness& w) {
    for (const auto& gamma : fib_of(w.k.dom)) {
      const Elem lhs = d.exists(w.top, d.reindex(w.left, gamma));
      const Elem rhs = d.reindex(w.f, d.exists(w.k, gamma));
      if (lhs != rhs) {
        r.add("Beck-Chevalley", "(" + mname(d, w.f) + "," + mname(d, w.k) + "," + d.render(w.k.dom, gamma) + ")");
      }
    }
  };
  if (!scope.pullbacks.empty()) {
    for (const auto& w : scope.pullbacks) {
      if (!c.equal(c.compose(w.f, w.top), c.compose(w.k, w.left))) {
        throw MalformedInput("scope references unknown pullback over " + mname(d, w.f) + "," + mname(d, w.k));
      }
      check_square(w);
    }
  } else {
    std::size_t missing = 0;
    for (const auto& f : ms) {
      for (const auto& k : ms) {
        if (f.cod != k.cod) continue;
        auto w = c.pullback(f, k);
        if (!w) {
          ++missing;
          continue;
        }
        check_square(*w);
      }
    }
    if (missing > 0) r.note(std::to_string(missing) + " cospans without a chosen pullback skipped");
  }
  return r;
}

Elem equality_predicate(const Doctrine& d, ObjectId a) { return d.equality(a); }

ValidationReport check_equality_laws(const Doctrine& d, const std::vector<ObjectId>& targets,
                                     const LawScope& scope) {
  ValidationReport r;
  const Category& c = d.base();
  r.note("exists-decomposition checked with the free formula read as alpha");
  for (ObjectId a : targets) {
    const Elem& delta = d.equality(a);
    const auto waa = require_product(c, a, a);
    if (!d.leq(a, d.top(a), d.reindex(diagonal(c, a), delta))) r.add("equality not reflexive", c.object_name(a));

    for (ObjectId x : scope.objects) {
      const auto wxa = c.product(x, a);
      const auto w3 = wxa ? c.product(wxa->object, a) : std::nullopt;
      if (!w3) {
        r.add("missing product", c.object_name(x) + " x " + c.object_name(a) + " x " + c.object_name(a),
              Severity::scope);
        continue;
      }
      const Morphism pi1 = c.compose(wxa->p1, w3->p1);
      const Morphism pi2 = c.compose(wxa->p2, w3->p1);
      const Morphism& pi3 = w3->p2;
      const Morphism p12 = c.pair(*wxa, pi1, pi2);
      const Morphism p23 = c.pair(waa, pi2, pi3);
      const Morphism p13 = c.pair(*wxa, pi1, pi3);
      const Elem d23 = d.reindex(p23, delta);
      Elem left, right;
      sweep_streaming(d, wxa->object, scope, r, [&](const Elem& phi, ValidationReport& out) {
        d.reindex_into(p12, phi, left);
        d.reindex_into(p13, phi, right);
        if (!d.leq(w3->object, d.meet(w3->object, left, d23), right)) {
          out.add("substitutivity", "(" + c.object_name(x) + "," + c.object_name(a) + "," +
                                        d.render(wxa->object, phi) + ")");
        }
      });
    }

    const auto alphas = view(d, a, scope, r).elems;
    for (ObjectId b : scope.objects) {
      auto hs = c.hom(a, b, scope.budget);
      if (!hs) throw PreconditionFailed("hom scan exceeds budget");
      const auto wba_opt = c.product(b, a);
      if (!wba_opt || !c.product(b, b)) {
        r.add("missing product", c.object_name(b) + " x " + c.object_name(wba_opt ? b : a), Severity::scope);
        continue;
      }
      const auto& wba = *wba_opt;
      const Elem& delta_b = d.equality(b);
      for (const auto& f : *hs) {
        const Elem graph = d.reindex(cross(c, c.identity(b), f), delta_b);
        for (const auto& alpha : alphas) {
          const Elem rhs = d.exists(wba.p1, d.meet(wba.object, graph, d.reindex(wba.p2, alpha)));
          if (d.exists(f, alpha) != rhs) {
            r.add("exists-decomposition", "(" + mname(d, f) + "," + d.render(a, alpha) + ")");
          }
        }
      }
    }
  }
  return r;
}

std::optional<ComprehensionWitness> find_comprehension(const Doctrine& d, ObjectId a, const Elem& alpha,
                                                       const std::vector<ObjectId>& probes,
                                                       std::uint64_t budget) {
  const Category& c = d.base();
  auto qualifies = [&](const Morphism& m) { return d.leq(m.dom, d.top(m.dom), d.reindex(m, alpha)); };
  std::map<ObjectId, std::vector<Morphism>> targets;
  for (ObjectId y : probes) {
    auto hs = c.hom(y, a, budget);
    if (!hs) throw PreconditionFailed("comprehension scan exceeds budget");
    for (auto& f : *hs) {
      if (qualifies(f)) targets[y].push_back(std::move(f));
    }
  }
  auto universal = [&](const Morphism& m) {
    if (!qualifies(m)) return false;
    for (ObjectId y : probes) {
      auto hs = c.hom(y, m.dom, budget);
      if (!hs) throw PreconditionFailed("comprehension scan exceeds budget");
      std::map<Morphism, int> hits;
      for (const auto& h : *hs) ++hits[c.canonical(c.compose(m, h))];
      for (const auto& f : targets[y]) {
        auto it = hits.find(f);
        if (it == hits.end() || it->second != 1) return false;
      }
    }
    return true;
  };
  auto witness = [&](const Morphism& m) {
    ComprehensionWitness w{a, alpha, m, is_mono(c, m, probes, budget).value_or(false)};
    if (!w.mono) throw WitnessFailure("comprehension " + c.morphism_name(m) + " is not mono");
    return w;
  };
  if (auto m = d.comprehension_candidate(a, alpha); m && universal(*m)) return witness(*m);
  for (ObjectId x : probes) {
    auto hs = c.hom(x, a, budget);
    if (!hs) throw PreconditionFailed("comprehension scan exceeds budget");
    for (const auto& m : *hs) {
      if (universal(m)) return witness(m);
    }
  }
  return std::nullopt;
}

std::optional<ComprehensionWitness> image(const Doctrine& d, const Morphism& f,
                                          const std::vector<ObjectId>& probes, std::uint64_t budget) {
  return find_comprehension(d, f.cod, d.exists(f, d.top(f.dom)), probes, budget);
}

ValidationReport check_first_order(const Doctrine& d, const LawScope& scope) {
  ValidationReport r;
  const Category& c = d.base();
  if (scope.objects.empty()) return r;
  const ObjectId a0 = scope.objects.front();
  const bool has_impl = d.implies(a0, d.top(a0), d.top(a0)).has_value();
  const bool has_forall = d.forall(c.identity(a0), d.top(a0)).has_value();
  if (!has_impl && !has_forall) {
    r.add("first-order witnesses missing", d.base().object_name(a0), Severity::malformed);
    return r;
  }
  std::map<ObjectId, std::vector<Elem>> fibers;
  for (ObjectId a : scope.objects) fibers[a] = view(d, a, scope, r).elems;

  if (has_impl) {
    for (ObjectId a : scope.objects) {
      const auto& fib = fibers[a];
      const bool cubic = fib.size() * fib.size() * fib.size() <= 16 * scope.budget;
      for (const auto& x : fib) {
        for (const auto& y : fib) {
          auto i = d.implies(a, x, y);
          const std::string w = "(" + d.render(a, x) + "," + d.render(a, y) + ")";
          if (!i) {
            r.add("implication table missing", w, Severity::malformed);
            continue;
          }
          if (!d.in_fiber(a, *i)) {
            r.add("implication leaves fiber", w);
            continue;
          }
          const std::size_t n = cubic ? fib.size() : std::min<std::size_t>(fib.size(), 16);
          for (std::size_t k = 0; k < n; ++k) {
            const auto& z = fib[k];
            if (d.leq(a, z, *i) != d.leq(a, d.meet(a, z, x), y)) {
              r.add("implication not residuation", w);
              break;
            }
          }
        }
      }
    }
  }
  if (has_forall) {
    std::vector<Elem> pulled;
    for (const auto& f : morphisms_among(c, scope.objects, scope.budget)) {
      const auto& fb = fibers[f.cod];
      pulled.resize(fb.size());
      for (std::size_t j = 0; j < fb.size(); ++j) d.reindex_into(f, fb[j], pulled[j]);
      for (const auto& alpha : fibers[f.dom]) {
        auto u = d.forall(f, alpha);
        if (!u) {
          r.add("forall table missing", "(" + mname(d, f) + "," + d.render(f.dom, alpha) + ")", Severity::malformed);
          continue;
        }
        for (std::size_t j = 0; j < fb.size(); ++j) {
          if (d.leq(f.cod, fb[j], *u) != d.leq(f.dom, pulled[j], alpha)) {
            r.add("forall adjunction", "(" + mname(d, f) + "," + d.render(f.dom, alpha) + "," + d.render(f.cod, fb[j]) + ")");
            break;
          }
        }
      }
    }
  }
  return r;
}

}  // namespace doctrina
