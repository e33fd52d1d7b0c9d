#include "doctrina/table.hpp"

#include "doctrina/error.hpp"

namespace doctrina {

namespace {

ElementId id_of(const Elem& x) {
  if (x.size() != 1) throw MalformedInput("table element must be a single id");
  return x[0];
}

Elem elem(ElementId i) { return Elem{static_cast<Value>(i)}; }

}  // namespace

void TableDoctrine::add_lattice(const std::string& name, FiniteMeetSemilattice l) {
  lattices_.insert_or_assign(name, std::move(l));
}

void TableDoctrine::set_fiber(ObjectId a, const std::string& lattice) {
  if (a >= c_.object_count()) throw MalformedInput("fiber for unknown object");
  if (!lattices_.count(lattice)) throw MalformedInput("fiber names unknown lattice " + lattice);
  fibers_[a] = lattice;
}

void TableDoctrine::set_reindex(MorphismId f, std::vector<ElementId> map) {
  if (f >= c_.morphism_count()) throw MalformedInput("reindex for unknown morphism");
  reindex_[f] = std::move(map);
}

void TableDoctrine::set_exists(MorphismId f, std::vector<ElementId> map) { exists_[f] = std::move(map); }
void TableDoctrine::set_implies(ObjectId a, std::vector<ElementId> table) { implies_[a] = std::move(table); }
void TableDoctrine::set_forall(MorphismId f, std::vector<ElementId> map) { forall_[f] = std::move(map); }

void TableDoctrine::set_comprehension(ObjectId a, ElementId alpha, MorphismId incl) {
  if (c_.info(incl).cod != a) throw MalformedInput("comprehension inclusion has the wrong codomain");
  comprehensions_[{a, alpha}] = incl;
}

void TableDoctrine::set_power_object(ObjectId x, ObjectId px, ElementId mem) { powers_[x] = {px, mem}; }

const std::string& TableDoctrine::fiber_name(ObjectId a) const {
  auto it = fibers_.find(a);
  if (it == fibers_.end()) throw MalformedInput("missing-fiber: " + c_.object_name(a));
  return it->second;
}

const FiniteMeetSemilattice& TableDoctrine::lattice(ObjectId a) const { return lattices_.at(fiber_name(a)); }

const std::vector<ElementId>& TableDoctrine::reindex_table(MorphismId f) const {
  auto it = reindex_.find(f);
  if (it == reindex_.end()) throw MalformedInput("missing-reindex: " + c_.info(f).name);
  return it->second;
}

void TableDoctrine::check_complete() const {
  for (ObjectId a = 0; a < c_.object_count(); ++a) fiber_name(a);
  for (MorphismId f = 0; f < c_.morphism_count(); ++f) {
    const auto& t = reindex_table(f);
    const auto& info = c_.info(f);
    if (t.size() != lattice(info.cod).size()) throw MalformedInput("reindex table for " + info.name + " not total");
    for (auto v : t) {
      if (v >= lattice(info.dom).size()) throw MalformedInput("reindex table for " + info.name + " out of range");
    }
  }
  auto check_map = [&](const std::vector<ElementId>& t, ObjectId from, ObjectId to, const std::string& what) {
    if (t.size() != lattice(from).size()) throw MalformedInput(what + " not total");
    for (auto v : t) {
      if (v >= lattice(to).size()) throw MalformedInput(what + " out of range");
    }
  };
  for (const auto& [f, t] : exists_) check_map(t, c_.info(f).dom, c_.info(f).cod, "exists table for " + c_.info(f).name);
  for (const auto& [f, t] : forall_) check_map(t, c_.info(f).dom, c_.info(f).cod, "forall table for " + c_.info(f).name);
  for (const auto& [a, t] : implies_) {
    const std::size_t n = lattice(a).size();
    if (t.size() != n * n) throw MalformedInput("implication table for " + c_.object_name(a) + " not total");
    for (auto v : t) {
      if (v >= n) throw MalformedInput("implication table for " + c_.object_name(a) + " out of range");
    }
  }
  for (const auto& [x, w] : powers_) {
    auto p = c_.product(x, w.first);
    if (!p) throw MalformedInput("power object of " + c_.object_name(x) + " needs a product");
    if (w.second >= lattice(p->object).size()) throw MalformedInput("membership out of range");
  }
}

bool TableDoctrine::leq(ObjectId a, const Elem& x, const Elem& y) const {
  return lattice(a).leq(id_of(x), id_of(y));
}

Elem TableDoctrine::meet(ObjectId a, const Elem& x, const Elem& y) const {
  return elem(lattice(a).meet(id_of(x), id_of(y)));
}

Elem TableDoctrine::top(ObjectId a) const { return elem(lattice(a).top()); }

bool TableDoctrine::in_fiber(ObjectId a, const Elem& x) const {
  return x.size() == 1 && x[0] < lattice(a).size();
}

bool TableDoctrine::for_each_element(ObjectId a, std::uint64_t budget,
                                     const std::function<void(const Elem&)>& visit) const {
  const std::size_t n = lattice(a).size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= budget) return false;
    visit(elem(static_cast<ElementId>(i)));
  }
  return true;
}

Elem TableDoctrine::reindex(const Morphism& f, const Elem& x) const {
  const auto& t = reindex_table(FiniteCategory::id_of(f));
  const ElementId i = id_of(x);
  if (i >= t.size()) throw MalformedInput("element out of range in reindex along " + c_.morphism_name(f));
  return elem(t[i]);
}

Elem TableDoctrine::exists(const Morphism& f, const Elem& x) const {
  auto it = exists_.find(FiniteCategory::id_of(f));
  if (it == exists_.end()) return Doctrine::exists(f, x);
  return elem(it->second.at(id_of(x)));
}

std::optional<Elem> TableDoctrine::implies(ObjectId a, const Elem& x, const Elem& y) const {
  auto it = implies_.find(a);
  if (it == implies_.end()) return std::nullopt;
  return elem(it->second.at(id_of(x) * lattice(a).size() + id_of(y)));
}

std::optional<Elem> TableDoctrine::forall(const Morphism& f, const Elem& x) const {
  auto it = forall_.find(FiniteCategory::id_of(f));
  if (it == forall_.end()) return std::nullopt;
  return elem(it->second.at(id_of(x)));
}

std::optional<Morphism> TableDoctrine::comprehension_candidate(ObjectId a, const Elem& alpha) const {
  auto it = comprehensions_.find({a, id_of(alpha)});
  if (it == comprehensions_.end()) return std::nullopt;
  return c_.mor(it->second);
}

std::optional<PowerObjectWitness> TableDoctrine::power_object(ObjectId x) const {
  auto it = powers_.find(x);
  if (it == powers_.end()) return std::nullopt;
  return PowerObjectWitness{x, it->second.first, elem(it->second.second), {}};
}

std::string TableDoctrine::render(ObjectId a, const Elem& x) const { return lattice(a).name(id_of(x)); }

TableDoctrine tabulate_doctrine(const Doctrine& d, const std::vector<ObjectId>& objects, std::uint64_t budget) {
  const Category& src = d.base();
  auto tab = tabulate_category(src, objects, budget);
  TableDoctrine out(tab.table);
  const FiniteCategory& t = out.category();

  std::vector<std::vector<Elem>> fibers;
  std::vector<std::map<Elem, ElementId>> index(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const ObjectId a = objects[i];
    auto fib = d.fiber(a, budget);
    if (!fib) throw PreconditionFailed("fiber over " + src.object_name(a) + " exceeds budget");
    const std::size_t n = fib->size();
    std::vector<std::string> names;
    std::vector<char> leq(n * n);
    std::vector<ElementId> meet(n * n);
    for (std::size_t x = 0; x < n; ++x) index[i][(*fib)[x]] = static_cast<ElementId>(x);
    for (std::size_t x = 0; x < n; ++x) {
      names.push_back(d.render(a, (*fib)[x]));
      for (std::size_t y = 0; y < n; ++y) {
        leq[x * n + y] = d.leq(a, (*fib)[x], (*fib)[y]) ? 1 : 0;
        meet[x * n + y] = index[i].at(d.meet(a, (*fib)[x], (*fib)[y]));
      }
    }
    const ElementId top = index[i].at(d.top(a));
    const std::string name = "P(" + src.object_name(a) + ")";
    out.add_lattice(name, FiniteMeetSemilattice(std::move(names), std::move(leq), std::move(meet), top));
    out.set_fiber(static_cast<ObjectId>(i), name);
    fibers.push_back(std::move(*fib));
  }

  std::map<ObjectId, std::size_t> local;
  for (std::size_t i = 0; i < objects.size(); ++i) local[objects[i]] = i;
  for (const auto& [m, id] : tab.morphism_ids) {
    const std::size_t dom = local.at(m.dom), cod = local.at(m.cod);
    std::vector<ElementId> r, e, fa;
    for (const auto& x : fibers[cod]) r.push_back(index[dom].at(d.reindex(m, x)));
    out.set_reindex(id, std::move(r));
    if (d.declares_exists()) {
      for (const auto& x : fibers[dom]) e.push_back(index[cod].at(d.exists(m, x)));
      out.set_exists(id, std::move(e));
    }
    if (d.forall(m, fibers[dom].front())) {
      for (const auto& x : fibers[dom]) fa.push_back(index[cod].at(*d.forall(m, x)));
      out.set_forall(id, std::move(fa));
    }
  }
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const ObjectId a = objects[i];
    const auto& fib = fibers[i];
    if (d.implies(a, fib.front(), fib.front())) {
      std::vector<ElementId> table;
      for (const auto& x : fib)
        for (const auto& y : fib) table.push_back(index[i].at(*d.implies(a, x, y)));
      out.set_implies(static_cast<ObjectId>(i), std::move(table));
    }
    for (std::size_t k = 0; k < fib.size(); ++k) {
      auto m = d.comprehension_candidate(a, fib[k]);
      if (!m || !local.count(m->dom)) continue;
      out.set_comprehension(static_cast<ObjectId>(i), static_cast<ElementId>(k), tab.morphism_ids.at(src.canonical(*m)));
    }
    if (auto w = d.power_object(a); w && local.count(w->px)) {
      auto p = t.product(static_cast<ObjectId>(i), static_cast<ObjectId>(local.at(w->px)));
      auto sp = src.product(a, w->px);
      if (p && sp && local.count(sp->object)) {
        out.set_power_object(static_cast<ObjectId>(i), static_cast<ObjectId>(local.at(w->px)),
                             index[local.at(sp->object)].at(w->mem));
      }
    }
  }
  return out;
}

}  // namespace doctrina
