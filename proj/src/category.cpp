#include "doctrina/category.hpp"

#include <map>
#include <set>

#include "doctrina/error.hpp"

namespace doctrina {

std::optional<Morphism> Category::factor_through(const Morphism& m, const Morphism& g,
                                                 std::uint64_t budget) const {
  auto hs = hom(g.dom, m.dom, budget);
  if (!hs) throw PreconditionFailed("factorization scan exceeds budget");
  for (const auto& h : *hs) {
    if (equal(compose(m, h), g)) return h;
  }
  return std::nullopt;
}

ProductWitness require_product(const Category& c, ObjectId a, ObjectId b) {
  auto w = c.product(a, b);
  if (!w) {
    throw PreconditionFailed("missing product " + c.object_name(a) + " x " + c.object_name(b));
  }
  return *w;
}

ObjectId require_terminal(const Category& c) {
  auto t = c.terminal();
  if (!t) throw PreconditionFailed("missing terminal object");
  return *t;
}

Morphism diagonal(const Category& c, ObjectId a) {
  const auto w = require_product(c, a, a);
  return c.pair(w, c.identity(a), c.identity(a));
}

Morphism cross(const Category& c, const Morphism& f, const Morphism& g) {
  const auto src = require_product(c, f.dom, g.dom);
  const auto dst = require_product(c, f.cod, g.cod);
  return c.pair(dst, c.compose(f, src.p1), c.compose(g, src.p2));
}

Morphism swap(const Category& c, ObjectId a, ObjectId b) {
  const auto src = require_product(c, a, b);
  const auto dst = require_product(c, b, a);
  return c.pair(dst, src.p2, src.p1);
}

Morphism pair(const Category& c, const Morphism& f, const Morphism& g) {
  return c.pair(require_product(c, f.cod, g.cod), f, g);
}

std::optional<std::string> check_product_witness(const Category& c, const ProductWitness& w,
                                                 const std::vector<ObjectId>& probes,
                                                 std::uint64_t budget) {
  if (w.p1.dom != w.object || w.p2.dom != w.object || w.p1.cod != w.left || w.p2.cod != w.right) {
    return "projection typing";
  }
  for (ObjectId x : probes) {
    auto hp = c.hom(x, w.object, budget);
    auto hl = c.hom(x, w.left, budget);
    auto hr = c.hom(x, w.right, budget);
    if (!hp || !hl || !hr) return std::nullopt;
    std::map<std::pair<Morphism, Morphism>, int> hits;
    for (const auto& h : *hp) {
      ++hits[{c.canonical(c.compose(w.p1, h)), c.canonical(c.compose(w.p2, h))}];
    }
    for (const auto& f : *hl) {
      for (const auto& g : *hr) {
        auto it = hits.find({f, g});
        const int n = it == hits.end() ? 0 : it->second;
        if (n != 1) {
          return std::string(n == 0 ? "no mediator" : "non-unique mediator") + " from " +
                 c.object_name(x) + " for (" + c.morphism_name(f) + "," + c.morphism_name(g) + ")";
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_pullback_witness(const Category& c, const PullbackWitness& w,
                                                  const std::vector<ObjectId>& probes,
                                                  std::uint64_t budget) {
  if (!c.equal(c.compose(w.f, w.top), c.compose(w.k, w.left))) return "square does not commute";
  for (ObjectId q : probes) {
    auto hp = c.hom(q, w.apex, budget);
    auto ha = c.hom(q, w.f.dom, budget);
    auto hb = c.hom(q, w.k.dom, budget);
    if (!hp || !ha || !hb) return std::nullopt;
    std::map<std::pair<Morphism, Morphism>, int> hits;
    for (const auto& h : *hp) {
      ++hits[{c.canonical(c.compose(w.top, h)), c.canonical(c.compose(w.left, h))}];
    }
    // Cones (a, b) are found by matching f.a against the k.b sharing its value.
    std::map<Morphism, std::vector<const Morphism*>> by_kb;
    for (const auto& b : *hb) by_kb[c.canonical(c.compose(w.k, b))].push_back(&b);
    for (const auto& a : *ha) {
      auto bs = by_kb.find(c.canonical(c.compose(w.f, a)));
      if (bs == by_kb.end()) continue;
      for (const Morphism* b : bs->second) {
        auto it = hits.find({a, *b});
        const int n = it == hits.end() ? 0 : it->second;
        if (n != 1) {
          return std::string(n == 0 ? "no mediator" : "non-unique mediator") + " from " + c.object_name(q);
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<bool> is_mono(const Category& c, const Morphism& m, const std::vector<ObjectId>& probes,
                            std::uint64_t budget) {
  for (ObjectId x : probes) {
    auto hs = c.hom(x, m.dom, budget);
    if (!hs) return std::nullopt;
    std::set<Morphism> seen;
    for (const auto& h : *hs) {
      if (!seen.insert(c.canonical(c.compose(m, h))).second) return false;
    }
  }
  return true;
}

std::optional<bool> is_epi(const Category& c, const Morphism& m, const std::vector<ObjectId>& probes,
                           std::uint64_t budget) {
  for (ObjectId z : probes) {
    auto hs = c.hom(m.cod, z, budget);
    if (!hs) return std::nullopt;
    std::set<Morphism> seen;
    for (const auto& h : *hs) {
      if (!seen.insert(c.canonical(c.compose(h, m))).second) return false;
    }
  }
  return true;
}

std::optional<Morphism> find_inverse(const Category& c, const Morphism& m, std::uint64_t budget) {
  auto hs = c.hom(m.cod, m.dom, budget);
  if (!hs) throw PreconditionFailed("inverse scan exceeds budget");
  for (const auto& g : *hs) {
    if (c.equal(c.compose(g, m), c.identity(m.dom)) && c.equal(c.compose(m, g), c.identity(m.cod))) {
      return g;
    }
  }
  return std::nullopt;
}

}  // namespace doctrina
