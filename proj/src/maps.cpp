#include "doctrina/maps.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "doctrina/error.hpp"

namespace doctrina {

namespace {

// Projections out of (Y x A) x C.
struct Triple {
  ProductWitness inner;
  ProductWitness outer;
  Morphism p1, p2, p3;
};

Triple triple(const Category& c, ObjectId y, ObjectId a, ObjectId z) {
  Triple t;
  t.inner = require_product(c, y, a);
  t.outer = require_product(c, t.inner.object, z);
  t.p1 = c.compose(t.inner.p1, t.outer.p1);
  t.p2 = c.compose(t.inner.p2, t.outer.p1);
  t.p3 = t.outer.p2;
  return t;
}

}  // namespace

std::string FunctionalRelation::refusal() const {
  if (!single_valued) return "single-valuedness";
  if (!total) return "totality";
  return "";
}

FunctionalRelation is_functional(const Doctrine& d, ObjectId y, ObjectId a, const Elem& f) {
  const Category& c = d.base();
  FunctionalRelation r{y, a, f, false, false};
  const Triple t = triple(c, y, a, a);
  const Elem lhs = d.meet(t.outer.object, d.reindex(t.outer.p1, f), d.reindex(pair(c, t.p1, t.p3), f));
  r.single_valued = d.leq(t.outer.object, lhs, d.reindex(pair(c, t.p2, t.p3), d.equality(a)));
  r.total = d.exists(t.inner.p1, f) == d.top(y);
  return r;
}

Elem opposite(const Doctrine& d, ObjectId y, ObjectId a, const Elem& f) {
  return d.reindex(swap(d.base(), a, y), f);
}

Elem compose_relations(const Doctrine& d, ObjectId y, ObjectId a, ObjectId z, const Elem& f, const Elem& g) {
  const Category& c = d.base();
  const Triple t = triple(c, y, a, z);
  const Elem body = d.meet(t.outer.object, d.reindex(t.outer.p1, f), d.reindex(pair(c, t.p2, t.p3), g));
  return d.exists(pair(c, t.p1, t.p3), body);
}

Elem graph_of(const Doctrine& d, const Morphism& f) {
  const Category& c = d.base();
  return d.reindex(cross(c, f, c.identity(f.cod)), d.equality(f.cod));
}

bool left_adjoint_check(const Doctrine& d, ObjectId y, ObjectId a, const Elem& l, const Elem& r) {
  const Category& c = d.base();
  // delta_Y(y,y') <= exists a. L(y,a) /\ R(a,y')
  const Elem lr = compose_relations(d, y, a, y, l, r);
  // exists y. R(a,y) /\ L(y,a') <= delta_A(a,a')
  const Elem rl = compose_relations(d, a, y, a, r, l);
  return d.leq(require_product(c, y, y).object, d.equality(y), lr) &&
         d.leq(require_product(c, a, a).object, rl, d.equality(a));
}

std::pair<std::optional<Morphism>, std::size_t> morphisms_with_graph(const Doctrine& d, ObjectId y, ObjectId a,
                                                                     const Elem& f, std::uint64_t budget) {
  auto hs = d.base().hom(y, a, budget);
  if (!hs) throw PreconditionFailed("hom scan exceeds budget");
  std::optional<Morphism> first;
  std::size_t n = 0;
  for (const auto& h : *hs) {
    if (graph_of(d, h) != f) continue;
    if (!first) first = h;
    ++n;
  }
  return {first, n};
}

std::optional<Elem> relation_inverse(const Doctrine& d, ObjectId y, ObjectId a, const Elem& f) {
  const Elem g = opposite(d, y, a, f);
  if (!is_functional(d, a, y, g).functional()) return std::nullopt;
  if (compose_relations(d, y, a, y, f, g) != d.equality(y) || compose_relations(d, a, y, a, g, f) != d.equality(a)) {
    return std::nullopt;
  }
  return g;
}

BijectivityVerdict internal_bijectivity(const Doctrine& d, const Morphism& f) {
  const Category& c = d.base();
  BijectivityVerdict v{f, false, false};
  v.injective = d.equality(f.dom) == d.reindex(cross(c, f, f), d.equality(f.cod));
  v.surjective = d.top(f.cod) == d.exists(f, d.top(f.dom));
  return v;
}

CompletenessVerdict is_complete(const Doctrine& d, ObjectId a, const std::vector<ObjectId>& sources,
                                const LawScope& scope) {
  const Category& c = d.base();
  CompletenessVerdict v;
  for (ObjectId y : sources) {
    auto hs = c.hom(y, a, scope.budget);
    if (!hs) throw PreconditionFailed("hom scan exceeds budget");
    std::map<Elem, std::size_t> graphs;
    for (const auto& h : *hs) ++graphs[graph_of(d, h)];
    const ObjectId ya = require_product(c, y, a).object;
    ValidationReport sweep;
    for (const auto& f : sweep_fiber(d, ya, scope, sweep)) {
      auto fr = is_functional(d, y, a, f);
      if (!fr.functional()) continue;
      auto it = graphs.find(f);
      const std::size_t n = it == graphs.end() ? 0 : it->second;
      if (n == 1) continue;
      v.report.add(n == 0 ? "functional relation is not a graph" : "functional relation is a graph twice",
                   "(" + c.object_name(y) + "," + d.render(ya, f) + ")");
      if (v.complete) {
        v.complete = false;
        v.counterexample = fr;
        v.graphs_found = n;
      }
    }
    if (sweep.sampled()) v.exhaustive = false;
    v.report.merge(sweep);
  }
  return v;
}

std::vector<Span> bijective_spans(const Doctrine& d, ObjectId a, const std::vector<ObjectId>& objects,
                                  std::uint64_t budget) {
  const Category& c = d.base();
  std::vector<Span> out;
  for (ObjectId x : objects) {
    auto qs = c.hom(x, a, budget);
    if (!qs) throw PreconditionFailed("hom scan exceeds budget");
    for (ObjectId y : objects) {
      auto ds = c.hom(x, y, budget);
      if (!ds) throw PreconditionFailed("hom scan exceeds budget");
      for (const auto& dm : *ds) {
        if (!internal_bijectivity(d, dm).bijective()) continue;
        for (const auto& q : *qs) {
          out.push_back({dm, q});
          if (out.size() > budget) throw PreconditionFailed("span count exceeds budget");
        }
      }
    }
  }
  return out;
}

SheafVerdict is_sheaf(const Doctrine& d, ObjectId a, const std::vector<Span>& spans, std::uint64_t budget) {
  const Category& c = d.base();
  SheafVerdict v;
  v.spans = spans.size();
  for (const auto& s : spans) {
    auto hs = c.hom(s.d.cod, a, budget);
    if (!hs) throw PreconditionFailed("hom scan exceeds budget");
    std::size_t n = 0;
    for (const auto& h : *hs) {
      if (c.equal(c.compose(h, s.d), s.q)) ++n;
    }
    if (n == 1) continue;
    const std::string w = "(" + c.morphism_name(s.d) + "," + c.morphism_name(s.q) + ")";
    if (n == 0) {
      v.report.add("no extension along bijective span", w);
      v.existence = false;
    } else {
      v.report.add("extension not unique", w);
      v.uniqueness = false;
    }
    if (!v.counterexample) v.counterexample = s;
  }
  return v;
}

Elem extension_relation(const Doctrine& d, const Morphism& dm, const Morphism& q) {
  const Category& c = d.base();
  const ObjectId y = dm.cod;
  const ObjectId a = q.cod;
  const ObjectId x = dm.dom;
  const Triple t = triple(c, y, a, x);
  const Elem eq_a = d.reindex(pair(c, c.compose(q, t.p3), t.p2), d.equality(a));
  const Elem eq_y = d.reindex(pair(c, c.compose(dm, t.p3), t.p1), d.equality(y));
  return d.exists(t.outer.p1, d.meet(t.outer.object, eq_a, eq_y));
}

Morphism complete_extension(const Doctrine& d, ObjectId a, const Morphism& dm, const Morphism& q,
                            std::uint64_t budget) {
  const Category& c = d.base();
  if (q.cod != a || q.dom != dm.dom) throw PreconditionFailed("span does not end in the target object");
  const Elem f = extension_relation(d, dm, q);
  if (!is_functional(d, dm.cod, a, f).functional()) {
    throw PreconditionFailed("completeness-precondition-violated: extension relation is not functional");
  }
  auto [h, n] = morphisms_with_graph(d, dm.cod, a, f, budget);
  if (n != 1) {
    throw PreconditionFailed("completeness-precondition-violated: " + std::to_string(n) +
                             " morphisms have the extension relation as graph");
  }
  if (!c.equal(c.compose(*h, dm), q)) throw WitnessFailure("extension does not restrict to q");
  return *h;
}

Elem MapCategory::identity(ObjectId a) const { return d_->equality(a); }

Elem MapCategory::compose(ObjectId y, ObjectId a, ObjectId c, const Elem& f, const Elem& g) const {
  return compose_relations(*d_, y, a, c, f, g);
}

std::optional<Elem> MapCategory::inverse(ObjectId y, ObjectId a, const Elem& f) const {
  return relation_inverse(*d_, y, a, f);
}

bool MapCategory::is_graph(ObjectId y, ObjectId a, const Elem& f) const {
  auto it = graphs_.find({y, a});
  if (it != graphs_.end()) return std::binary_search(it->second.begin(), it->second.end(), f);
  return morphisms_with_graph(*d_, y, a, f).second > 0;
}

MapCategory build_map_category(const Doctrine& d, const std::vector<ObjectId>& objects, const LawScope& scope,
                               const std::vector<FunctionalRelation>& extra) {
  const Category& c = d.base();
  MapCategory m;
  m.d_ = &d;
  m.objects_ = objects;
  for (ObjectId y : objects) {
    for (ObjectId a : objects) {
      auto& graphs = m.graphs_[{y, a}];
      auto hs = c.hom(y, a, scope.budget);
      if (!hs) throw PreconditionFailed("hom scan exceeds budget");
      for (const auto& h : *hs) graphs.push_back(graph_of(d, h));
      std::sort(graphs.begin(), graphs.end());
      graphs.erase(std::unique(graphs.begin(), graphs.end()), graphs.end());

      auto& hom = m.homs_[{y, a}];
      const ObjectId ya = require_product(c, y, a).object;
      if (auto fib = d.fiber(ya, scope.budget)) {
        for (const auto& f : *fib) {
          if (is_functional(d, y, a, f).functional()) hom.push_back(f);
        }
      } else {
        m.report_.note("relations " + c.object_name(y) + " -> " + c.object_name(a) +
                       " generated from graphs and supplied relations");
        hom = graphs;
        for (const auto& fr : extra) {
          if (fr.source == y && fr.target == a && fr.functional()) hom.push_back(fr.formula);
        }
        std::sort(hom.begin(), hom.end());
        hom.erase(std::unique(hom.begin(), hom.end()), hom.end());
      }
    }
  }

  // Identity laws and closure under composition, exhaustively on pairs.
  for (ObjectId y : objects) {
    for (ObjectId a : objects) {
      for (const auto& f : m.homs_[{y, a}]) {
        if (m.compose(y, y, a, m.identity(y), f) != f || m.compose(y, a, a, f, m.identity(a)) != f) {
          m.report_.add("Map identity law", "(" + c.object_name(y) + "," + c.object_name(a) + "," +
                                                d.render(require_product(c, y, a).object, f) + ")");
        }
      }
    }
  }
  // Associativity on seeded composable triples.
  std::mt19937_64 rng(scope.seed);
  auto pick = [&](const std::vector<Elem>& v) -> const Elem& {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  auto pick_object = [&]() { return objects[std::uniform_int_distribution<std::size_t>(0, objects.size() - 1)(rng)]; };
  for (int i = 0; i < 100 && !objects.empty(); ++i) {
    const ObjectId o0 = pick_object(), o1 = pick_object(), o2 = pick_object(), o3 = pick_object();
    const auto& h01 = m.homs_[{o0, o1}];
    const auto& h12 = m.homs_[{o1, o2}];
    const auto& h23 = m.homs_[{o2, o3}];
    if (h01.empty() || h12.empty() || h23.empty()) continue;
    const Elem& f = pick(h01);
    const Elem& g = pick(h12);
    const Elem& h = pick(h23);
    const Elem left = m.compose(o0, o2, o3, m.compose(o0, o1, o2, f, g), h);
    const Elem right = m.compose(o0, o1, o3, f, m.compose(o1, o2, o3, g, h));
    if (left != right) {
      m.report_.add("Map associativity", "(" + c.object_name(o0) + "," + c.object_name(o1) + "," +
                                             c.object_name(o2) + "," + c.object_name(o3) + ")");
    }
    if (!is_functional(d, o0, o2, m.compose(o0, o1, o2, f, g)).functional()) {
      m.report_.add("Map composite not functional", c.object_name(o0) + "," + c.object_name(o2));
    }
  }
  // Graph functor: identities and composites.
  for (ObjectId y : objects) {
    if (graph_of(d, c.identity(y)) != m.identity(y)) m.report_.add("graph of identity", c.object_name(y));
  }
  for (int i = 0; i < 100 && !objects.empty(); ++i) {
    const ObjectId o0 = pick_object(), o1 = pick_object(), o2 = pick_object();
    auto fs = c.hom(o0, o1, scope.budget);
    auto gs = c.hom(o1, o2, scope.budget);
    if (!fs || !gs || fs->empty() || gs->empty()) continue;
    const Morphism f = (*fs)[std::uniform_int_distribution<std::size_t>(0, fs->size() - 1)(rng)];
    const Morphism g = (*gs)[std::uniform_int_distribution<std::size_t>(0, gs->size() - 1)(rng)];
    if (graph_of(d, c.compose(g, f)) != m.compose(o0, o1, o2, graph_of(d, f), graph_of(d, g))) {
      m.report_.add("graph not functorial", "(" + c.morphism_name(f) + "," + c.morphism_name(g) + ")");
    }
  }
  return m;
}

}  // namespace doctrina
