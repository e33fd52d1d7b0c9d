#include "doctrina/examples.hpp"

#include <algorithm>
#include <mutex>

#include "doctrina/error.hpp"

namespace doctrina {

// ---------------------------------------------------------------- closures

ClosureOperator ClosureOperator::identity() {
  return {"identity", [](ObjectId, const Elem& x) { return x; }};
}

ClosureOperator ClosureOperator::double_negation(const Doctrine& d) {
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<ObjectId, Elem>, Elem> neg;
  };
  auto cache = std::make_shared<Cache>();
  auto neg = [&d, cache](ObjectId a, const Elem& x) {
    {
      std::lock_guard lock(cache->mutex);
      auto it = cache->neg.find({a, x});
      if (it != cache->neg.end()) return it->second;
    }
    auto fib = d.fiber(a);
    if (!fib) throw PreconditionFailed("fiber over " + d.base().object_name(a) + " exceeds budget");
    const Elem bot = d.bottom(a);
    std::optional<Elem> best;
    for (const auto& y : *fib) {
      if (d.meet(a, y, x) != bot) continue;
      if (!best || d.leq(a, *best, y)) best = y;
    }
    // best is the greatest disjoint element only if it dominates every other.
    for (const auto& y : *fib) {
      if (d.meet(a, y, x) == bot && !d.leq(a, y, *best)) {
        throw PreconditionFailed("no pseudo-complement in the fiber over " + d.base().object_name(a));
      }
    }
    std::lock_guard lock(cache->mutex);
    cache->neg[{a, x}] = *best;
    return *best;
  };
  return {"double-negation", [neg](ObjectId a, const Elem& x) { return neg(a, neg(a, x)); }};
}

ClosureOperator ClosureOperator::pointwise(const ValuationDoctrine& d, std::vector<ElementId> map, std::string name) {
  if (map.size() != d.algebra().size()) throw MalformedInput("closure map has the wrong size");
  for (auto v : map) {
    if (v >= map.size()) throw MalformedInput("closure map out of range");
  }
  return {std::move(name), [map = std::move(map)](ObjectId, const Elem& x) {
            Elem out(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<Value>(map[x[i]]);
            return out;
          }};
}

ValidationReport check_closure(const Doctrine& d, const ClosureOperator& cl, const std::vector<ObjectId>& objects,
                               std::uint64_t budget) {
  ValidationReport r;
  const Category& c = d.base();
  std::map<ObjectId, std::vector<Elem>> fibers;
  for (ObjectId a : objects) {
    auto fib = d.fiber(a, budget);
    if (!fib) {
      r.add("fiber-too-large", c.object_name(a), Severity::scope);
      continue;
    }
    const std::string an = c.object_name(a) + ":";
    std::vector<Elem> closed(fib->size());
    for (std::size_t i = 0; i < fib->size(); ++i) closed[i] = cl.apply(a, (*fib)[i]);
    for (std::size_t i = 0; i < fib->size(); ++i) {
      const Elem& x = (*fib)[i];
      const Elem& cx = closed[i];
      if (!d.in_fiber(a, cx)) {
        r.add("closure leaves fiber", an + d.render(a, x));
        continue;
      }
      if (!d.leq(a, x, cx)) r.add("not inflationary", an + d.render(a, x));
      if (cl.apply(a, cx) != cx) r.add("not idempotent", an + d.render(a, x));
      for (std::size_t j = 0; j < fib->size(); ++j) {
        const Elem& y = (*fib)[j];
        if (d.leq(a, x, y) && !d.leq(a, cx, closed[j])) {
          r.add("not monotone", an + d.render(a, x) + "," + d.render(a, y));
        }
        if (cl.apply(a, d.meet(a, x, y)) != d.meet(a, cx, closed[j])) {
          r.add("does not preserve meets", an + d.render(a, x) + "," + d.render(a, y));
        }
      }
    }
    fibers[a] = std::move(*fib);
  }
  for (const auto& f : morphisms_among(c, objects, budget)) {
    auto it = fibers.find(f.cod);
    if (it == fibers.end() || !fibers.count(f.dom)) continue;
    for (const auto& x : it->second) {
      if (cl.apply(f.dom, d.reindex(f, x)) != d.reindex(f, cl.apply(f.cod, x))) {
        r.add("closure not natural", c.morphism_name(f) + ":" + d.render(f.cod, x));
      }
    }
  }
  return r;
}

bool ClosedSubobjectDoctrine::in_fiber(ObjectId a, const Elem& x) const {
  return d_.in_fiber(a, x) && cl_.apply(a, x) == x;
}

bool ClosedSubobjectDoctrine::for_each_element(ObjectId a, std::uint64_t budget,
                                               const std::function<void(const Elem&)>& visit) const {
  return d_.for_each_element(a, budget, [&](const Elem& x) {
    if (cl_.apply(a, x) == x) visit(x);
  });
}

Elem ClosedSubobjectDoctrine::exists(const Morphism& f, const Elem& x) const {
  return cl_.apply(f.cod, d_.exists(f, x));
}

std::unique_ptr<ClosedSubobjectDoctrine> closed_subobject_doctrine(const Doctrine& d, const ClosureOperator& cl,
                                                                   const std::vector<ObjectId>& objects) {
  const ValidationReport r = check_closure(d, cl, objects);
  for (const auto& e : r.entries()) {
    if (e.law == "closure not natural") throw PreconditionFailed("naturality failure: " + e.witness);
  }
  return std::make_unique<ClosedSubobjectDoctrine>(d, cl);
}

// ---------------------------------------------------------------- fixtures

namespace {

FiniteHeytingAlgebra algebra_named(const std::string& name) {
  auto h = FiniteHeytingAlgebra::named(name);
  if (!h) throw MalformedInput("unknown algebra " + name);
  return *h;
}

void bound_sizes(const std::vector<std::size_t>& sizes, std::size_t max, const std::string& what) {
  for (auto n : sizes) {
    if (n > max) throw PreconditionFailed(what + " size " + std::to_string(n) + " exceeds " + std::to_string(max));
  }
}

}  // namespace

Fixture gen_fixture(const FixtureSpec& spec) {
  Fixture fx;
  fx.spec = spec;
  auto& sizes = fx.spec.sizes;
  if (spec.name == "finset-sub" || spec.name == "localic") {
    const bool sub = spec.name == "finset-sub";
    if (sub) fx.spec.algebra = "bool2";
    if (sizes.empty()) sizes = sub ? std::vector<std::size_t>{0, 1, 2, 4} : std::vector<std::size_t>{1, 2, 4};
    bound_sizes(sizes, sub ? 6 : 4, spec.name);
    auto d = std::make_shared<LocalicDoctrine>(algebra_named(fx.spec.algebra));
    for (auto n : sizes) fx.objects.push_back(d->object(n));
    fx.base = d;
    fx.doctrine = d;
    if (!spec.closure.empty() && spec.closure != "identity" && spec.closure != "double-negation" &&
        spec.closure != "nucleus") {
      throw MalformedInput("unknown closure " + spec.closure);
    }
    if (spec.closure == "nucleus") {
      fx.build_report = check_closure(*d, ClosureOperator::pointwise(*d, spec.nucleus, "nucleus"), fx.objects);
      fx.doctrine = closed_subobject_doctrine(*d, ClosureOperator::pointwise(*d, spec.nucleus, "nucleus"), fx.objects);
    } else if (!spec.closure.empty()) {
      auto cl = spec.closure == "identity" ? ClosureOperator::identity() : ClosureOperator::double_negation(*d);
      fx.build_report = check_closure(*d, cl, fx.objects);
      fx.doctrine = closed_subobject_doctrine(*d, cl, fx.objects);
    }
  } else if (spec.name == "arrow-presheaf") {
    if (sizes.empty()) sizes = {2};
    if (sizes.size() != 1) throw MalformedInput("arrow-presheaf takes one component bound");
    bound_sizes(sizes, 2, spec.name);
    fx.spec.algebra = "bool2";
    auto d = std::make_shared<PresheafSubDoctrine>();
    fx.objects = d->arrows().all_objects_up_to(sizes[0]);
    fx.base = d;
    fx.doctrine = d;
    if (spec.closure == "identity" || spec.closure == "double-negation") {
      auto cl = spec.closure == "identity" ? ClosureOperator::identity() : ClosureOperator::double_negation(*d);
      fx.build_report = check_closure(*d, cl, fx.objects);
      fx.doctrine = closed_subobject_doctrine(*d, cl, fx.objects);
    } else if (!spec.closure.empty()) {
      throw MalformedInput("closure " + spec.closure + " is not available on arrow-presheaf");
    }
  } else if (spec.name == "per") {
    if (sizes.empty()) sizes = {1, 2};
    bound_sizes(sizes, 3, spec.name);
    LocalicDoctrine base(algebra_named(spec.algebra));
    std::shared_ptr<PerDoctrine> d = build_per_completion(base, {sizes, spec.max_extent}, fx.build_report);
    fx.objects = d->objects();
    fx.base = d;
    fx.doctrine = d;
  } else {
    throw MalformedInput("unknown fixture " + spec.name);
  }
  return fx;
}

namespace {

MorphismId morphism_named(const FiniteCategory& c, const std::string& name) {
  auto m = c.find_morphism(name);
  if (!m) throw PreconditionFailed("fixture has no morphism " + name);
  return *m;
}

ElementId element_named(const FiniteMeetSemilattice& l, const std::string& name) {
  auto e = l.find(name);
  if (!e) throw PreconditionFailed("fixture has no element " + name);
  return *e;
}

}  // namespace

TableDoctrine planted_defect(const std::string& name) {
  LocalicDoctrine sub(FiniteHeytingAlgebra::chain(2));
  if (name == "corrupted-reindex") {
    TableDoctrine t = tabulate_doctrine(sub, {sub.object(1), sub.object(2)});
    const MorphismId sw = morphism_named(t.category(), "2->2[1,0]");
    auto table = t.reindex_table(sw);
    const auto& l = t.lattice(t.category().info(sw).cod);
    table[element_named(l, "{0}")] = element_named(l, "{0}");
    t.set_reindex(sw, table);
    return t;
  }
  if (name == "delta-top") {
    TableDoctrine t = tabulate_doctrine(sub, {sub.object(1), sub.object(2), sub.object(4)});
    const MorphismId diag = morphism_named(t.category(), "2->4[0,3]");
    const auto& four = t.lattice(t.category().info(diag).cod);
    t.set_exists(diag, std::vector<ElementId>(t.lattice(t.category().info(diag).dom).size(), four.top()));
    return t;
  }
  if (name == "forall-as-exists") {
    TableDoctrine t = tabulate_doctrine(sub, {sub.object(1), sub.object(2)});
    const auto exists = t.exists_tables();
    for (const auto& [f, table] : exists) t.set_forall(f, table);
    return t;
  }
  if (name == "mem-top") {
    TableDoctrine t = tabulate_doctrine(sub, {sub.object(1), sub.object(2)});
    const auto [px, mem] = t.power_objects().at(0);
    const ObjectId prod = t.category().product(0, px)->object;
    (void)mem;
    t.set_power_object(0, px, t.lattice(prod).top());
    return t;
  }
  if (name == "non-associative") {
    TableDoctrine t(non_associative_category());
    t.add_lattice("1", FiniteMeetSemilattice({"T"}, {1}));
    t.set_fiber(0, "1");
    for (MorphismId m = 0; m < t.category().morphism_count(); ++m) t.set_reindex(m, {0});
    return t;
  }
  throw MalformedInput("unknown planted defect " + name);
}

FiniteCategory non_associative_category() {
  FiniteCategory c;
  const ObjectId a = c.add_object("A");
  const MorphismId id = c.add_morphism("id", a, a);
  const MorphismId e = c.add_morphism("e", a, a);
  const MorphismId f = c.add_morphism("f", a, a);
  c.set_identity(a, id);
  for (MorphismId m : {id, e, f}) {
    c.set_composite(m, id, m);
    c.set_composite(id, m, m);
  }
  // (e.e).e = f.e = f but e.(e.e) = e.f = e
  c.set_composite(e, e, f);
  c.set_composite(e, f, e);
  c.set_composite(f, e, f);
  c.set_composite(f, f, f);
  return c;
}

std::vector<ObjectId> dense_orthogonal_objects(const ArrowCategory& c, const std::vector<ObjectId>& objects,
                                               std::uint64_t budget) {
  struct DenseMono {
    ObjectId sub;
    Morphism incl;
  };
  std::vector<DenseMono> monos;
  for (ObjectId y : objects) {
    const auto yr = c.arrow(y);
    for (std::uint32_t mask = 0; mask < (1u << yr.n0); ++mask) {
      ArrowCategory::Arrow u{0, yr.n1, {}};
      Morphism m{0, y, {}};
      for (std::uint32_t i = 0; i < yr.n0; ++i) {
        if (!(mask >> i & 1)) continue;
        ++u.n0;
        u.x.push_back(yr.x[i]);
        m.map.push_back(i);
      }
      for (std::uint32_t j = 0; j < yr.n1; ++j) m.map.push_back(static_cast<std::uint32_t>(yr.n0 + j));
      m.dom = c.object(u);
      monos.push_back({m.dom, m});
    }
  }
  std::vector<ObjectId> out;
  for (ObjectId x : objects) {
    bool orthogonal = true;
    for (const auto& dm : monos) {
      if (!orthogonal) break;
      auto gs = c.hom(dm.sub, x, budget);
      auto hs = c.hom(dm.incl.cod, x, budget);
      if (!gs || !hs) throw PreconditionFailed("hom scan exceeds budget");
      for (const auto& g : *gs) {
        std::size_t n = 0;
        for (const auto& h : *hs) n += c.compose(h, dm.incl) == g;
        if (n != 1) {
          orthogonal = false;
          break;
        }
      }
    }
    if (orthogonal) out.push_back(x);
  }
  return out;
}

}  // namespace doctrina
