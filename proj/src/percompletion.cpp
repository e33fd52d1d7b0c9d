#include "doctrina/percompletion.hpp"

#include <algorithm>

#include "doctrina/error.hpp"

namespace doctrina {

// ------------------------------------------------------------- PerCategory

ObjectId PerCategory::object(const PerObject& p) const {
  if (p.rho.size() != p.n * p.n) throw MalformedInput("PER with a relation of the wrong size");
  std::lock_guard lock(lock_.mutex);
  auto it = ids_.find(p);
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<ObjectId>(pers_.size());
  pers_.push_back(p);
  ids_[p] = id;
  return id;
}

const PerObject& PerCategory::per(ObjectId a) const {
  std::lock_guard lock(lock_.mutex);
  return pers_.at(a);
}

std::size_t PerCategory::object_count() const {
  std::lock_guard lock(lock_.mutex);
  return pers_.size();
}

bool PerCategory::is_morphism(const Morphism& m) const {
  const PerObject& s = per(m.dom);
  const PerObject& t = per(m.cod);
  if (m.map.size() != s.n) return false;
  for (auto v : m.map) {
    if (v >= t.n) return false;
  }
  for (std::size_t x = 0; x < s.n; ++x) {
    for (std::size_t y = 0; y < s.n; ++y) {
      if (!h_->leq(s.at(x, y), t.at(m.map[x], m.map[y]))) return false;
    }
  }
  return true;
}

bool PerCategory::equal(const Morphism& a, const Morphism& b) const {
  if (a.dom != b.dom || a.cod != b.cod) return false;
  const PerObject& s = per(a.dom);
  const PerObject& t = per(a.cod);
  for (std::size_t x = 0; x < s.n; ++x) {
    if (!h_->leq(s.at(x, x), t.at(a.map[x], b.map[x]))) return false;
  }
  return true;
}

Morphism PerCategory::canonical(const Morphism& m) const {
  const PerObject& s = per(m.dom);
  const PerObject& t = per(m.cod);
  Morphism out = m;
  for (std::size_t x = 0; x < s.n; ++x) {
    for (std::uint32_t b = 0; b < t.n; ++b) {
      if (h_->leq(s.at(x, x), t.at(m.map[x], b))) {
        out.map[x] = b;
        break;
      }
    }
  }
  return out;
}

std::optional<std::vector<Morphism>> PerCategory::members(const Morphism& m, std::uint64_t budget) const {
  const PerObject& s = per(m.dom);
  const PerObject& t = per(m.cod);
  std::vector<std::vector<std::uint32_t>> allowed(s.n);
  for (std::size_t x = 0; x < s.n; ++x) {
    for (std::uint32_t b = 0; b < t.n; ++b) {
      if (h_->leq(s.at(x, x), t.at(m.map[x], b))) allowed[x].push_back(b);
    }
  }
  std::vector<Morphism> out;
  Morphism g{m.dom, m.cod, std::vector<std::uint32_t>(s.n)};
  auto walk = [&](auto&& self, std::size_t x) -> bool {
    if (x == s.n) {
      if (out.size() >= budget) return false;
      out.push_back(g);
      return true;
    }
    for (auto b : allowed[x]) {
      g.map[x] = b;
      if (!self(self, x + 1)) return false;
    }
    return true;
  };
  if (!walk(walk, 0)) return std::nullopt;
  return out;
}

std::string PerCategory::object_name(ObjectId a) const {
  const PerObject& p = per(a);
  std::string s = "(" + std::to_string(p.n) + ";";
  for (std::size_t i = 0; i < p.rho.size(); ++i) {
    if (i > 0) s += i % p.n == 0 ? "|" : ",";
    s += h_->name(p.rho[i]);
  }
  return s + ")";
}

std::optional<std::vector<Morphism>> PerCategory::hom(ObjectId x, ObjectId y, std::uint64_t budget) const {
  const PerObject& s = per(x);
  const PerObject& t = per(y);
  // Values a point may take in a representative: tracked and least in class.
  std::vector<std::vector<std::uint32_t>> choices(s.n);
  for (std::size_t i = 0; i < s.n; ++i) {
    const Value e = s.at(i, i);
    for (std::uint32_t v = 0; v < t.n; ++v) {
      if (!h_->leq(e, t.at(v, v))) continue;
      bool least = true;
      for (std::uint32_t b = 0; b < v && least; ++b) least = !h_->leq(e, t.at(v, b));
      if (least) choices[i].push_back(v);
    }
  }
  std::vector<Morphism> out;
  Morphism g{x, y, std::vector<std::uint32_t>(s.n)};
  auto walk = [&](auto&& self, std::size_t i) -> bool {
    if (i == s.n) {
      if (out.size() >= budget) return false;
      out.push_back(g);
      return true;
    }
    for (auto v : choices[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = h_->leq(s.at(i, j), t.at(v, g.map[j]));
      if (!ok) continue;
      g.map[i] = v;
      if (!self(self, i + 1)) return false;
    }
    return true;
  };
  if (!walk(walk, 0)) return std::nullopt;
  return out;
}

std::optional<ObjectId> PerCategory::terminal() const {
  return object(PerObject{1, {static_cast<Value>(h_->top())}});
}

Morphism PerCategory::to_terminal(ObjectId a) const {
  return Morphism{a, *terminal(), std::vector<std::uint32_t>(carrier(a), 0)};
}

std::optional<ProductWitness> PerCategory::product(ObjectId a, ObjectId b) const {
  {
    std::lock_guard lock(lock_.mutex);
    auto it = products_.find({a, b});
    if (it != products_.end()) return it->second;
  }
  const PerObject s = per(a), t = per(b);
  PerObject p{s.n * t.n, {}};
  p.rho.resize(p.n * p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    for (std::size_t j = 0; j < p.n; ++j) {
      p.rho[i * p.n + j] = static_cast<Value>(h_->meet(s.at(i / t.n, j / t.n), t.at(i % t.n, j % t.n)));
    }
  }
  const ObjectId po = object(p);
  ProductWitness w{a, b, po, {po, a, {}}, {po, b, {}}};
  for (std::size_t i = 0; i < p.n; ++i) {
    w.p1.map.push_back(static_cast<std::uint32_t>(i / t.n));
    w.p2.map.push_back(static_cast<std::uint32_t>(i % t.n));
  }
  std::lock_guard lock(lock_.mutex);
  products_.emplace(std::pair{a, b}, w);
  return w;
}

Morphism PerCategory::pair(const ProductWitness& w, const Morphism& f, const Morphism& g) const {
  if (f.dom != g.dom || f.cod != w.left || g.cod != w.right) {
    throw PreconditionFailed("pairing morphisms of the wrong type");
  }
  const auto m = static_cast<std::uint32_t>(carrier(w.right));
  Morphism h{f.dom, w.object, std::vector<std::uint32_t>(f.map.size())};
  for (std::size_t i = 0; i < f.map.size(); ++i) h.map[i] = f.map[i] * m + g.map[i];
  return h;
}

std::optional<PullbackWitness> PerCategory::pullback(const Morphism& f, const Morphism& k) const {
  if (f.cod != k.cod) throw PreconditionFailed("pullback of a non-cospan");
  const PerObject s = per(f.dom), t = per(k.dom), u = per(f.cod);
  // rho((a,b),(a',b')) = rho(a,a') /\ sigma(b,b') /\ tau(fa,kb) /\ tau(fa',kb')
  PerObject p{s.n * t.n, {}};
  p.rho.resize(p.n * p.n);
  auto agree = [&](std::size_t i) { return u.at(f.map[i / t.n], k.map[i % t.n]); };
  for (std::size_t i = 0; i < p.n; ++i) {
    for (std::size_t j = 0; j < p.n; ++j) {
      ElementId v = h_->meet(s.at(i / t.n, j / t.n), t.at(i % t.n, j % t.n));
      v = h_->meet(v, h_->meet(agree(i), agree(j)));
      p.rho[i * p.n + j] = static_cast<Value>(v);
    }
  }
  const ObjectId apex = object(p);
  PullbackWitness w{f, k, apex, {apex, f.dom, {}}, {apex, k.dom, {}}};
  for (std::size_t i = 0; i < p.n; ++i) {
    w.top.map.push_back(static_cast<std::uint32_t>(i / t.n));
    w.left.map.push_back(static_cast<std::uint32_t>(i % t.n));
  }
  return w;
}

std::vector<PerObject> enumerate_pers(const FiniteHeytingAlgebra& h, std::size_t n) {
  std::vector<PerObject> out;
  PerObject p{n, std::vector<Value>(n * n, 0)};
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i) slots.emplace_back(i, i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  auto transitive = [&] {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          if (!h.leq(h.meet(p.at(x, y), p.at(y, z)), p.at(x, z))) return false;
    return true;
  };
  auto walk = [&](auto&& self, std::size_t k) -> void {
    if (k == slots.size()) {
      if (transitive()) out.push_back(p);
      return;
    }
    const auto [i, j] = slots[k];
    for (ElementId v = 0; v < h.size(); ++v) {
      if (i != j && !h.leq(v, h.meet(p.at(i, i), p.at(j, j)))) continue;
      p.rho[i * n + j] = p.rho[j * n + i] = static_cast<Value>(v);
      self(self, k + 1);
    }
  };
  walk(walk, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// ------------------------------------------------------------- PerDoctrine

PerDoctrine::PerDoctrine(FiniteHeytingAlgebra h) : ValuationDoctrine(std::move(h)), cat_(algebra()) {}

Elem PerDoctrine::extent(ObjectId a) const {
  const PerObject& p = cat_.per(a);
  Elem e(p.n);
  for (std::size_t x = 0; x < p.n; ++x) e[x] = p.at(x, x);
  return e;
}

bool PerDoctrine::consistent(ObjectId a, const Elem& x, std::size_t i) const {
  const auto& h = algebra();
  const PerObject& p = cat_.per(a);
  for (std::size_t j = 0; j <= i; ++j) {
    if (!h.leq(h.meet(x[i], p.at(i, j)), x[j])) return false;
    if (!h.leq(h.meet(x[j], p.at(j, i)), x[i])) return false;
  }
  return true;
}

Elem PerDoctrine::exists(const Morphism& f, const Elem& x) const {
  const auto& h = algebra();
  const PerObject& t = cat_.per(f.cod);
  Elem out(t.n, static_cast<Value>(h.bottom()));
  for (std::size_t a = 0; a < f.map.size(); ++a) {
    for (std::size_t b = 0; b < t.n; ++b) {
      out[b] = static_cast<Value>(h.join(out[b], h.meet(x[a], t.at(f.map[a], b))));
    }
  }
  return out;
}

std::optional<Elem> PerDoctrine::implies(ObjectId a, const Elem& x, const Elem& y) const {
  const auto& h = algebra();
  const PerObject& p = cat_.per(a);
  Elem out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<Value>(h.meet(p.at(i, i), h.impl(x[i], y[i])));
  return out;
}

std::optional<Elem> PerDoctrine::forall(const Morphism& f, const Elem& x) const {
  // sigma(b,b) /\ meet over a of (rho(a,a) /\ sigma(fa,b)) => x(a)
  const auto& h = algebra();
  const PerObject& s = cat_.per(f.dom);
  const PerObject& t = cat_.per(f.cod);
  Elem out(t.n);
  for (std::size_t b = 0; b < t.n; ++b) {
    ElementId v = t.at(b, b);
    for (std::size_t a = 0; a < s.n; ++a) v = h.meet(v, h.impl(h.meet(s.at(a, a), t.at(f.map[a], b)), x[a]));
    out[b] = static_cast<Value>(v);
  }
  return out;
}

std::optional<Morphism> PerDoctrine::comprehension_candidate(ObjectId a, const Elem& alpha) const {
  if (!in_fiber(a, alpha)) return std::nullopt;
  const auto& h = algebra();
  PerObject p = cat_.per(a);
  for (std::size_t x = 0; x < p.n; ++x) {
    for (std::size_t y = 0; y < p.n; ++y) {
      p.rho[x * p.n + y] = static_cast<Value>(h.meet(p.rho[x * p.n + y], h.meet(alpha[x], alpha[y])));
    }
  }
  Morphism m = cat_.identity(a);
  m.dom = cat_.object(p);
  return m;
}

std::optional<PowerObjectWitness> PerDoctrine::power_object(ObjectId a) const {
  const auto& h = algebra();
  const PerObject p = cat_.per(a);
  const std::size_t base = h.size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < p.n; ++i) {
    count *= base;
    if (count > 1024) return std::nullopt;
  }
  std::vector<Elem> phis(count, Elem(p.n));
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t r = c;
    for (std::size_t i = 0; i < p.n; ++i, r /= base) phis[c][i] = static_cast<Value>(r % base);
  }
  auto iff = [&](ElementId u, ElementId v) { return h.meet(h.impl(u, v), h.impl(v, u)); };
  // St(phi): strict and extensional, to the degree it holds.
  std::vector<ElementId> st(count);
  for (std::size_t c = 0; c < count; ++c) {
    const Elem& f = phis[c];
    ElementId v = h.top();
    for (std::size_t x = 0; x < p.n; ++x) {
      v = h.meet(v, h.impl(f[x], p.at(x, x)));
      for (std::size_t y = 0; y < p.n; ++y) v = h.meet(v, h.impl(h.meet(f[x], p.at(x, y)), f[y]));
    }
    st[c] = v;
  }
  PerObject pa{count, std::vector<Value>(count * count)};
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t e = 0; e < count; ++e) {
      ElementId v = h.meet(st[c], st[e]);
      for (std::size_t x = 0; x < p.n; ++x) v = h.meet(v, h.impl(p.at(x, x), iff(phis[c][x], phis[e][x])));
      pa.rho[c * count + e] = static_cast<Value>(v);
    }
  }
  PowerObjectWitness w;
  w.x = a;
  w.px = cat_.object(pa);
  w.mem.resize(p.n * count);
  for (std::size_t x = 0; x < p.n; ++x) {
    for (std::size_t c = 0; c < count; ++c) {
      w.mem[x * count + c] = static_cast<Value>(h.meet(h.meet(phis[c][x], st[c]), p.at(x, x)));
    }
  }
  const ObjectId px = w.px;
  w.transpose = [this, a, px, base, n = p.n](ObjectId y, const Elem& gamma) -> std::optional<Morphism> {
    const std::size_t m = cat_.carrier(y);
    if (gamma.size() != n * m) return std::nullopt;
    Morphism g{y, px, std::vector<std::uint32_t>(m, 0)};
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t code = 0;
      for (std::size_t x = n; x-- > 0;) code = code * base + gamma[x * m + j];
      g.map[j] = static_cast<std::uint32_t>(code);
    }
    if (!cat_.is_morphism(g)) return std::nullopt;
    return cat_.canonical(g);
  };
  return w;
}

Elem PerDoctrine::relation(ObjectId a) const { return cat_.per(a).rho; }


std::unique_ptr<PerDoctrine> build_per_completion(const LocalicDoctrine& d, const PerLimits& limits,
                                                  ValidationReport& report) {
  LawScope base_scope;
  for (auto n : limits.base_sizes) base_scope.objects.push_back(d.object(n));
  const ValidationReport fo = check_first_order(d, base_scope);
  for (const auto& e : fo.entries()) {
    if (e.law == "first-order witnesses missing") throw MalformedInput("first-order-missing: " + e.witness);
  }
  if (!fo.ok()) throw PreconditionFailed("first-order laws fail on the base: " + fo.entries().front().law);

  auto pd = std::make_unique<PerDoctrine>(d.algebra());
  const auto& h = pd->algebra();
  for (auto n : limits.base_sizes) {
    for (const auto& p : enumerate_pers(h, n)) {
      std::size_t support = 0;
      for (std::size_t x = 0; x < n; ++x) support += p.at(x, x) != h.bottom();
      if (support <= limits.max_extent) pd->objects_.push_back(pd->object(p));
    }
  }

  LawScope scope;
  scope.objects = pd->objects_;
  report.merge(validate_doctrine(*pd, scope));
  for (ObjectId a : pd->objects_) {
    const ObjectId aa = require_product(pd->pers(), a, a).object;
    if (pd->equality(a) != pd->relation(a)) {
      report.add("equality is not the relation", pd->pers().object_name(a) + ": " + pd->render(aa, pd->equality(a)),
                 Severity::theorem);
    }
  }
  // Reindexing along any member of a class agrees with the representative.
  for (const auto& f : morphisms_among(pd->pers(), pd->objects_)) {
    auto ms = pd->pers().members(f, 4096);
    if (!ms) {
      report.add("class too large", pd->pers().morphism_name(f), Severity::scope);
      continue;
    }
    for (const auto& phi : sweep_fiber(*pd, f.cod, scope, report)) {
      const Elem want = pd->reindex(f, phi);
      for (const auto& g : *ms) {
        if (pd->reindex(g, phi) != want) {
          report.add("reindexing depends on the representative", pd->pers().morphism_name(g), Severity::theorem);
        }
      }
    }
  }
  return pd;
}

ToposCorrespondence check_topos_correspondence(const PerDoctrine& d, const std::vector<ObjectId>& probes,
                                               const LawScope& scope) {
  ToposCorrespondence t;
  // Singletons are checked inside the reflector, once per probe.
  t.reflection = reflector(d, probes, scope);
  t.report.merge(t.reflection.report);
  t.report.merge(check_equivalences(d, t.reflection, probes, scope));
  for (ObjectId a : probes) {
    auto it = t.reflection.sheaves.find(a);
    if (it != t.reflection.sheaves.end() && it->second) {
      t.sheaves.push_back(a);
      t.report.note("sheaf " + d.pers().object_name(a));
    }
  }
  return t;
}

}  // namespace doctrina
