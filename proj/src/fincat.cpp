#include "doctrina/fincat.hpp"

#include <algorithm>
#include <set>

#include "doctrina/error.hpp"

namespace doctrina {

namespace {

std::uint64_t key(MorphismId g, MorphismId f) { return (std::uint64_t{g} << 32) | f; }

}  // namespace

ObjectId FiniteCategory::add_object(std::string name) {
  objects_.push_back(std::move(name));
  identities_.emplace_back();
  homs_.clear();
  return static_cast<ObjectId>(objects_.size() - 1);
}

MorphismId FiniteCategory::add_morphism(std::string name, ObjectId dom, ObjectId cod) {
  if (dom >= objects_.size() || cod >= objects_.size()) {
    throw MalformedInput("morphism " + name + " has out-of-range endpoint");
  }
  morphisms_.push_back({std::move(name), dom, cod});
  homs_.clear();
  return static_cast<MorphismId>(morphisms_.size() - 1);
}

void FiniteCategory::set_identity(ObjectId a, MorphismId m) {
  if (a >= objects_.size() || m >= morphisms_.size()) throw MalformedInput("identity out of range");
  identities_[a] = m;
}

void FiniteCategory::set_composite(MorphismId g, MorphismId f, MorphismId gf) {
  if (g >= morphisms_.size() || f >= morphisms_.size() || gf >= morphisms_.size()) {
    throw MalformedInput("composition entry out of range");
  }
  if (morphisms_[f].cod != morphisms_[g].dom) {
    throw MalformedInput("composition entry for non-composable pair (" + morphisms_[f].name + "," +
                         morphisms_[g].name + ")");
  }
  compose_[key(g, f)] = gf;
}

void FiniteCategory::declare_product(const ProductWitness& w) { products_.push_back(w); }
void FiniteCategory::declare_pullback(const PullbackWitness& w) {
  pullback_index_.try_emplace({id_of(w.f), id_of(w.k)}, pullbacks_.size());
  pullbacks_.push_back(w);
}

std::optional<ObjectId> FiniteCategory::find_object(const std::string& name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<ObjectId>(it - objects_.begin());
}

std::optional<MorphismId> FiniteCategory::find_morphism(const std::string& name) const {
  for (MorphismId m = 0; m < morphisms_.size(); ++m) {
    if (morphisms_[m].name == name) return m;
  }
  return std::nullopt;
}

std::optional<MorphismId> FiniteCategory::identity_id(ObjectId a) const { return identities_.at(a); }

std::optional<MorphismId> FiniteCategory::composite(MorphismId g, MorphismId f) const {
  auto it = compose_.find(key(g, f));
  if (it == compose_.end()) return std::nullopt;
  return it->second;
}

void FiniteCategory::ensure_homs() const {
  std::lock_guard lock(cache_lock_.mutex);
  const std::size_t n = objects_.size();
  if (homs_.size() == n * n) return;
  homs_.assign(n * n, {});
  for (MorphismId m = 0; m < morphisms_.size(); ++m) {
    homs_[morphisms_[m].dom * n + morphisms_[m].cod].push_back(m);
  }
}

const std::vector<MorphismId>& FiniteCategory::hom_ids(ObjectId x, ObjectId y) const {
  ensure_homs();
  return homs_.at(x * objects_.size() + y);
}

Morphism FiniteCategory::mor(MorphismId m) const {
  const auto& i = morphisms_.at(m);
  return Morphism{i.dom, i.cod, {m}};
}

Morphism FiniteCategory::identity(ObjectId a) const {
  auto id = identities_.at(a);
  if (!id) throw MalformedInput("missing identity for " + objects_[a]);
  return mor(*id);
}

Morphism FiniteCategory::compose(const Morphism& g, const Morphism& f) const {
  if (f.cod != g.dom) throw PreconditionFailed("composing non-composable morphisms");
  auto h = composite(id_of(g), id_of(f));
  if (!h) {
    throw MalformedInput("composition not total at (" + morphism_name(f) + "," + morphism_name(g) + ")");
  }
  return mor(*h);
}

std::optional<std::vector<Morphism>> FiniteCategory::hom(ObjectId x, ObjectId y, std::uint64_t budget) const {
  const auto& ids = hom_ids(x, y);
  if (ids.size() > budget) return std::nullopt;
  std::vector<Morphism> out;
  out.reserve(ids.size());
  for (MorphismId m : ids) out.push_back(mor(m));
  return out;
}

std::optional<ObjectId> FiniteCategory::terminal() const {
  if (terminal_) return terminal_;
  return search_terminal(*this);
}

Morphism FiniteCategory::to_terminal(ObjectId a) const {
  auto t = terminal();
  if (!t) throw PreconditionFailed("missing terminal object");
  const auto& ids = hom_ids(a, *t);
  if (ids.size() != 1) throw WitnessFailure("terminal object is not terminal for " + objects_[a]);
  return mor(ids[0]);
}

std::optional<ProductWitness> FiniteCategory::product(ObjectId a, ObjectId b) const {
  for (const auto& w : products_) {
    if (w.left == a && w.right == b) return w;
  }
  {
    std::lock_guard lock(cache_lock_.mutex);
    auto it = product_cache_.find({a, b});
    if (it != product_cache_.end()) return it->second;
  }
  auto w = search_product(*this, a, b);
  std::lock_guard lock(cache_lock_.mutex);
  product_cache_[{a, b}] = w;
  return w;
}

Morphism FiniteCategory::pair(const ProductWitness& w, const Morphism& f, const Morphism& g) const {
  if (f.dom != g.dom || f.cod != w.left || g.cod != w.right) {
    throw PreconditionFailed("pairing morphisms of the wrong type");
  }
  std::optional<Morphism> found;
  for (MorphismId h : hom_ids(f.dom, w.object)) {
    const Morphism hm = mor(h);
    if (compose(w.p1, hm) == f && compose(w.p2, hm) == g) {
      if (found) throw WitnessFailure("non-unique mediator for (" + morphism_name(f) + "," + morphism_name(g) + ")");
      found = hm;
    }
  }
  if (!found) throw WitnessFailure("no mediator for (" + morphism_name(f) + "," + morphism_name(g) + ")");
  return *found;
}

std::optional<PullbackWitness> FiniteCategory::pullback(const Morphism& f, const Morphism& k) const {
  if (auto it = pullback_index_.find({id_of(f), id_of(k)}); it != pullback_index_.end()) {
    return pullbacks_[it->second];
  }
  {
    std::lock_guard lock(cache_lock_.mutex);
    auto it = pullback_cache_.find({id_of(f), id_of(k)});
    if (it != pullback_cache_.end()) return it->second;
  }
  auto w = search_pullback(*this, f, k);
  std::lock_guard lock(cache_lock_.mutex);
  pullback_cache_[{id_of(f), id_of(k)}] = w;
  return w;
}

ValidationReport validate_category(const FiniteCategory& c, bool witnesses) {
  ValidationReport r;
  const auto n = static_cast<ObjectId>(c.object_count());
  const auto m = static_cast<MorphismId>(c.morphism_count());
  for (ObjectId a = 0; a < n; ++a) {
    auto id = c.identity_id(a);
    if (!id) throw MalformedInput("missing identity for " + c.object_name(a));
    if (c.info(*id).dom != a || c.info(*id).cod != a) throw MalformedInput("identity of " + c.object_name(a) + " has wrong type");
  }
  auto comp = [&](MorphismId g, MorphismId f) {
    auto h = c.composite(g, f);
    if (!h) throw MalformedInput("composition not total at (" + c.info(f).name + "," + c.info(g).name + ")");
    if (c.info(*h).dom != c.info(f).dom || c.info(*h).cod != c.info(g).cod) {
      throw MalformedInput("composite at (" + c.info(f).name + "," + c.info(g).name + ") has wrong type");
    }
    return *h;
  };
  for (MorphismId f = 0; f < m; ++f) {
    const auto& fi = c.info(f);
    for (ObjectId z = 0; z < n; ++z) {
      for (MorphismId g : c.hom_ids(fi.cod, z)) comp(g, f);
    }
  }
  for (MorphismId f = 0; f < m; ++f) {
    const auto& fi = c.info(f);
    if (comp(*c.identity_id(fi.cod), f) != f || comp(f, *c.identity_id(fi.dom)) != f) {
      r.add("identity law", fi.name);
    }
    for (ObjectId y = 0; y < n; ++y) {
      for (MorphismId g : c.hom_ids(fi.cod, y)) {
        const MorphismId gf = comp(g, f);
        for (ObjectId z = 0; z < n; ++z) {
          for (MorphismId h : c.hom_ids(y, z)) {
            if (comp(h, gf) != comp(comp(h, g), f)) {
              r.add("associativity", "(" + fi.name + "," + c.info(g).name + "," + c.info(h).name + ")");
            }
          }
        }
      }
    }
  }
  if (!witnesses) return r;
  std::vector<ObjectId> all(n);
  for (ObjectId a = 0; a < n; ++a) all[a] = a;
  if (auto t = c.declared_terminal()) {
    for (ObjectId a = 0; a < n; ++a) {
      if (c.hom_ids(a, *t).size() != 1) r.add("terminal not universal", c.object_name(a));
    }
  }
  for (const auto& w : c.declared_products()) {
    if (auto why = check_product_witness(c, w, all)) {
      r.add("product not universal", c.object_name(w.left) + " x " + c.object_name(w.right) + ": " + *why);
    }
  }
  for (const auto& w : c.declared_pullbacks()) {
    if (auto why = check_pullback_witness(c, w, all)) {
      r.add("pullback not universal", "(" + c.morphism_name(w.f) + "," + c.morphism_name(w.k) + "): " + *why);
    }
  }
  return r;
}

std::optional<ObjectId> search_terminal(const FiniteCategory& c) {
  const auto n = static_cast<ObjectId>(c.object_count());
  for (ObjectId t = 0; t < n; ++t) {
    bool ok = true;
    for (ObjectId a = 0; a < n && ok; ++a) ok = c.hom_ids(a, t).size() == 1;
    if (ok) return t;
  }
  return std::nullopt;
}

std::optional<ProductWitness> search_product(const FiniteCategory& c, ObjectId a, ObjectId b) {
  const auto n = static_cast<ObjectId>(c.object_count());
  for (ObjectId p = 0; p < n; ++p) {
    bool sizes = true;
    for (ObjectId q = 0; q < n && sizes; ++q) {
      sizes = c.hom_ids(q, p).size() == c.hom_ids(q, a).size() * c.hom_ids(q, b).size();
    }
    if (!sizes) continue;
    for (MorphismId p1 : c.hom_ids(p, a)) {
      for (MorphismId p2 : c.hom_ids(p, b)) {
        bool universal = true;
        for (ObjectId q = 0; q < n && universal; ++q) {
          std::set<std::pair<MorphismId, MorphismId>> seen;
          for (MorphismId h : c.hom_ids(q, p)) {
            auto x = c.composite(p1, h), y = c.composite(p2, h);
            if (!x || !y || !seen.insert({*x, *y}).second) universal = false;
          }
        }
        if (universal) return ProductWitness{a, b, p, c.mor(p1), c.mor(p2)};
      }
    }
  }
  return std::nullopt;
}

std::optional<PullbackWitness> search_pullback(const FiniteCategory& c, const Morphism& f, const Morphism& k,
                                               std::uint64_t budget) {
  if (f.cod != k.cod) throw PreconditionFailed("pullback of a non-cospan");
  const auto n = static_cast<ObjectId>(c.object_count());
  const MorphismId fi = FiniteCategory::id_of(f), ki = FiniteCategory::id_of(k);
  auto cones = [&](ObjectId q) {
    std::vector<std::pair<MorphismId, MorphismId>> out;
    for (MorphismId x : c.hom_ids(q, f.dom)) {
      auto fx = c.composite(fi, x);
      for (MorphismId z : c.hom_ids(q, k.dom)) {
        if (fx && fx == c.composite(ki, z)) out.emplace_back(x, z);
      }
    }
    return out;
  };
  std::vector<std::size_t> cone_count(n);
  for (ObjectId q = 0; q < n; ++q) cone_count[q] = cones(q).size();
  std::uint64_t tried = 0;
  for (ObjectId p = 0; p < n; ++p) {
    bool sizes = true;
    for (ObjectId q = 0; q < n && sizes; ++q) sizes = c.hom_ids(q, p).size() == cone_count[q];
    if (!sizes) continue;
    for (auto [top, left] : cones(p)) {
      if (++tried > budget) return std::nullopt;
      bool universal = true;
      for (ObjectId q = 0; q < n && universal; ++q) {
        std::set<std::pair<MorphismId, MorphismId>> seen;
        for (MorphismId h : c.hom_ids(q, p)) {
          if (!seen.insert({*c.composite(top, h), *c.composite(left, h)}).second) universal = false;
        }
      }
      if (universal) return PullbackWitness{f, k, p, c.mor(top), c.mor(left)};
    }
  }
  return std::nullopt;
}

TabulatedCategory tabulate_category(const Category& src, const std::vector<ObjectId>& objects,
                                    std::uint64_t budget) {
  TabulatedCategory out;
  out.objects = objects;
  auto& t = out.table;
  std::map<ObjectId, ObjectId> local;
  for (ObjectId a : objects) {
    local[a] = t.add_object(src.object_name(a));
  }
  std::vector<Morphism> source;
  for (ObjectId x : objects) {
    for (ObjectId y : objects) {
      auto hs = src.hom(x, y, budget);
      if (!hs) throw PreconditionFailed("hom(" + src.object_name(x) + "," + src.object_name(y) + ") exceeds budget");
      for (const auto& h : *hs) {
        const Morphism key = src.canonical(h);
        out.morphism_ids[key] = t.add_morphism(src.morphism_name(key), local[x], local[y]);
        source.push_back(key);
      }
    }
  }
  auto id_in = [&](const Morphism& m) { return out.morphism_ids.at(src.canonical(m)); };
  for (ObjectId a : objects) t.set_identity(local[a], id_in(src.identity(a)));
  for (const auto& f : source) {
    for (ObjectId z : objects) {
      for (MorphismId g : t.hom_ids(local[f.cod], local[z])) {
        t.set_composite(g, out.morphism_ids.at(f), id_in(src.compose(source[g], f)));
      }
    }
  }
  auto lift = [&](const Morphism& m) { return t.mor(id_in(m)); };
  if (auto term = src.terminal(); term && local.count(*term)) t.set_terminal(local[*term]);
  for (ObjectId a : objects) {
    for (ObjectId b : objects) {
      auto w = src.product(a, b);
      if (w && local.count(w->object)) {
        t.declare_product({local[a], local[b], local[w->object], lift(w->p1), lift(w->p2)});
      }
    }
  }
  for (const auto& f : source) {
    for (const auto& k : source) {
      if (f.cod != k.cod) continue;
      auto w = src.pullback(f, k);
      if (w && local.count(w->apex)) {
        t.declare_pullback({lift(f), lift(k), local[w->apex], lift(w->top), lift(w->left)});
      }
    }
  }
  return out;
}

}  // namespace doctrina
