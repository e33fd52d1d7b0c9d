#include "doctrina/concrete.hpp"

#include <algorithm>

#include "doctrina/error.hpp"

namespace doctrina {

namespace {

std::string join_values(const std::vector<std::uint32_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

// Calls `emit` with every function [0,n) -> [0,m) in lexicographic order.
// Returns false (emitting nothing) when there are more than `budget`.
template <class Emit>
bool for_each_function(std::size_t n, std::size_t m, std::uint64_t budget, Emit emit) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (m == 0) { count = 0; break; }
    count *= m;
    if (count > budget) return false;
  }
  if (count == 0) return true;
  std::vector<std::uint32_t> f(n, 0);
  while (true) {
    emit(f);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++f[i] < m) break;
      f[i] = 0;
      if (i == 0) return true;
    }
    if (n == 0) return true;
  }
}

}  // namespace

std::string ConcreteCategory::morphism_name(const Morphism& m) const {
  return object_name(m.dom) + "->" + object_name(m.cod) + "[" + join_values(m.map) + "]";
}

Morphism ConcreteCategory::identity(ObjectId a) const {
  Morphism m{a, a, std::vector<std::uint32_t>(carrier(a))};
  for (std::uint32_t i = 0; i < m.map.size(); ++i) m.map[i] = i;
  return m;
}

Morphism ConcreteCategory::compose(const Morphism& g, const Morphism& f) const {
  if (f.cod != g.dom) throw PreconditionFailed("composing non-composable morphisms");
  Morphism h{f.dom, g.cod, std::vector<std::uint32_t>(f.map.size())};
  for (std::size_t i = 0; i < f.map.size(); ++i) h.map[i] = g.map[f.map[i]];
  return h;
}

std::optional<Morphism> ConcreteCategory::factor_through(const Morphism& m, const Morphism& g,
                                                         std::uint64_t budget) const {
  if (m.cod != g.cod) throw PreconditionFailed("factoring through a morphism with another codomain");
  Morphism h{g.dom, m.dom, std::vector<std::uint32_t>(g.map.size())};
  bool found = true;
  for (std::size_t y = 0; y < g.map.size() && found; ++y) {
    auto it = std::find(m.map.begin(), m.map.end(), g.map[y]);
    if (it == m.map.end()) found = false;
    else h.map[y] = static_cast<std::uint32_t>(it - m.map.begin());
  }
  if (found && is_morphism(h) && equal(compose(m, h), g)) return canonical(h);
  return Category::factor_through(m, g, budget);
}

// ---------------------------------------------------------------- FinSet

ObjectId FinSet::object(std::size_t n) const {
  std::lock_guard lock(lock_.mutex);
  auto it = ids_.find(n);
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<ObjectId>(sizes_.size());
  sizes_.push_back(n);
  ids_[n] = id;
  return id;
}

std::size_t FinSet::carrier(ObjectId a) const {
  std::lock_guard lock(lock_.mutex);
  return sizes_.at(a);
}

bool FinSet::is_morphism(const Morphism& m) const {
  if (m.map.size() != carrier(m.dom)) return false;
  const auto n = carrier(m.cod);
  return std::all_of(m.map.begin(), m.map.end(), [n](std::uint32_t v) { return v < n; });
}

std::string FinSet::object_name(ObjectId a) const { return std::to_string(carrier(a)); }

std::optional<std::vector<Morphism>> FinSet::hom(ObjectId x, ObjectId y, std::uint64_t budget) const {
  std::vector<Morphism> out;
  const bool ok = for_each_function(carrier(x), carrier(y), budget,
                                    [&](const std::vector<std::uint32_t>& f) { out.push_back({x, y, f}); });
  if (!ok) return std::nullopt;
  return out;
}

Morphism FinSet::to_terminal(ObjectId a) const {
  return Morphism{a, object(1), std::vector<std::uint32_t>(carrier(a), 0)};
}

std::optional<ProductWitness> FinSet::product(ObjectId a, ObjectId b) const {
  const std::size_t n = carrier(a), m = carrier(b);
  const ObjectId p = object(n * m);
  ProductWitness w{a, b, p, {p, a, {}}, {p, b, {}}};
  for (std::size_t i = 0; i < n * m; ++i) {
    w.p1.map.push_back(static_cast<std::uint32_t>(i / m));
    w.p2.map.push_back(static_cast<std::uint32_t>(i % m));
  }
  return w;
}

Morphism FinSet::pair(const ProductWitness& w, const Morphism& f, const Morphism& g) const {
  if (f.dom != g.dom || f.cod != w.left || g.cod != w.right) {
    throw PreconditionFailed("pairing morphisms of the wrong type");
  }
  const auto m = static_cast<std::uint32_t>(carrier(w.right));
  Morphism h{f.dom, w.object, std::vector<std::uint32_t>(f.map.size())};
  for (std::size_t i = 0; i < f.map.size(); ++i) h.map[i] = f.map[i] * m + g.map[i];
  return h;
}

std::optional<PullbackWitness> FinSet::pullback(const Morphism& f, const Morphism& k) const {
  if (f.cod != k.cod) throw PreconditionFailed("pullback of a non-cospan");
  std::vector<std::uint32_t> top, left;
  for (std::uint32_t x = 0; x < f.map.size(); ++x) {
    for (std::uint32_t z = 0; z < k.map.size(); ++z) {
      if (f.map[x] == k.map[z]) {
        top.push_back(x);
        left.push_back(z);
      }
    }
  }
  const ObjectId apex = object(top.size());
  return PullbackWitness{f, k, apex, {apex, f.dom, top}, {apex, k.dom, left}};
}

// --------------------------------------------------------- ArrowCategory

ObjectId ArrowCategory::object(const Arrow& a) const {
  if (a.x.size() != a.n0) throw MalformedInput("arrow object with wrong map length");
  for (auto v : a.x) {
    if (v >= a.n1) throw MalformedInput("arrow object map out of range");
  }
  std::lock_guard lock(lock_.mutex);
  auto it = ids_.find(a);
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<ObjectId>(arrows_.size());
  arrows_.push_back(a);
  ids_[a] = id;
  return id;
}

const ArrowCategory::Arrow& ArrowCategory::arrow(ObjectId a) const {
  std::lock_guard lock(lock_.mutex);
  return arrows_.at(a);
}

std::vector<ObjectId> ArrowCategory::all_objects_up_to(std::size_t n) const {
  std::vector<ObjectId> out;
  for (std::size_t n0 = 0; n0 <= n; ++n0) {
    for (std::size_t n1 = 0; n1 <= n; ++n1) {
      for_each_function(n0, n1, kDefaultBudget, [&](const std::vector<std::uint32_t>& x) {
        out.push_back(object(Arrow{n0, n1, x}));
      });
    }
  }
  return out;
}

std::size_t ArrowCategory::carrier(ObjectId a) const {
  const auto& r = arrow(a);
  return r.n0 + r.n1;
}

bool ArrowCategory::is_morphism(const Morphism& m) const {
  const Arrow s = arrow(m.dom), t = arrow(m.cod);
  if (m.map.size() != s.n0 + s.n1) return false;
  for (std::size_t i = 0; i < s.n0; ++i) {
    if (m.map[i] >= t.n0) return false;
  }
  for (std::size_t j = 0; j < s.n1; ++j) {
    if (m.map[s.n0 + j] < t.n0 || m.map[s.n0 + j] >= t.n0 + t.n1) return false;
  }
  for (std::size_t i = 0; i < s.n0; ++i) {
    if (t.x[m.map[i]] + t.n0 != m.map[s.n0 + s.x[i]]) return false;
  }
  return true;
}

std::string ArrowCategory::object_name(ObjectId a) const {
  const auto& r = arrow(a);
  return "X" + std::to_string(r.n0) + ">" + std::to_string(r.n1) + "[" + join_values(r.x) + "]";
}

std::optional<std::vector<Morphism>> ArrowCategory::hom(ObjectId x, ObjectId y, std::uint64_t budget) const {
  const Arrow s = arrow(x), t = arrow(y);
  std::vector<Morphism> out;
  bool over = false;
  const bool ok = for_each_function(s.n1, t.n1, budget, [&](const std::vector<std::uint32_t>& f1) {
    if (over) return;
    // Each X0 point must land in the fiber of t.x over f1(s.x(i)).
    std::vector<std::vector<std::uint32_t>> choices(s.n0);
    for (std::size_t i = 0; i < s.n0; ++i) {
      for (std::uint32_t v = 0; v < t.n0; ++v) {
        if (t.x[v] == f1[s.x[i]]) choices[i].push_back(v);
      }
      if (choices[i].empty()) return;
    }
    std::vector<std::size_t> idx(s.n0, 0);
    while (true) {
      Morphism m{x, y, {}};
      for (std::size_t i = 0; i < s.n0; ++i) m.map.push_back(choices[i][idx[i]]);
      for (auto v : f1) m.map.push_back(static_cast<std::uint32_t>(t.n0 + v));
      out.push_back(std::move(m));
      if (out.size() > budget) { over = true; return; }
      std::size_t i = s.n0;
      while (i > 0) {
        --i;
        if (++idx[i] < choices[i].size()) break;
        idx[i] = 0;
        if (i == 0) return;
      }
      if (s.n0 == 0) return;
    }
  });
  if (!ok || over) return std::nullopt;
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<ObjectId> ArrowCategory::terminal() const { return object(Arrow{1, 1, {0}}); }

Morphism ArrowCategory::to_terminal(ObjectId a) const {
  const auto& r = arrow(a);
  Morphism m{a, *terminal(), std::vector<std::uint32_t>(r.n0, 0)};
  m.map.insert(m.map.end(), r.n1, 1);
  return m;
}

std::optional<ProductWitness> ArrowCategory::product(ObjectId a, ObjectId b) const {
  const Arrow s = arrow(a), t = arrow(b);
  Arrow p{s.n0 * t.n0, s.n1 * t.n1, {}};
  for (std::size_t i = 0; i < s.n0; ++i)
    for (std::size_t j = 0; j < t.n0; ++j)
      p.x.push_back(static_cast<std::uint32_t>(s.x[i] * t.n1 + t.x[j]));
  const ObjectId po = object(p);
  ProductWitness w{a, b, po, {po, a, {}}, {po, b, {}}};
  for (std::size_t i = 0; i < p.n0; ++i) {
    w.p1.map.push_back(static_cast<std::uint32_t>(i / t.n0));
    w.p2.map.push_back(static_cast<std::uint32_t>(i % t.n0));
  }
  for (std::size_t j = 0; j < p.n1; ++j) {
    w.p1.map.push_back(static_cast<std::uint32_t>(s.n0 + j / t.n1));
    w.p2.map.push_back(static_cast<std::uint32_t>(t.n0 + j % t.n1));
  }
  return w;
}

Morphism ArrowCategory::pair(const ProductWitness& w, const Morphism& f, const Morphism& g) const {
  if (f.dom != g.dom || f.cod != w.left || g.cod != w.right) {
    throw PreconditionFailed("pairing morphisms of the wrong type");
  }
  const Arrow d = arrow(f.dom), s = arrow(w.left), t = arrow(w.right), p = arrow(w.object);
  Morphism h{f.dom, w.object, {}};
  for (std::size_t i = 0; i < d.n0; ++i) {
    h.map.push_back(static_cast<std::uint32_t>(f.map[i] * t.n0 + g.map[i]));
  }
  for (std::size_t j = 0; j < d.n1; ++j) {
    const auto u = f.map[d.n0 + j] - s.n0, v = g.map[d.n0 + j] - t.n0;
    h.map.push_back(static_cast<std::uint32_t>(p.n0 + u * t.n1 + v));
  }
  return h;
}

std::optional<PullbackWitness> ArrowCategory::pullback(const Morphism& f, const Morphism& k) const {
  if (f.cod != k.cod) throw PreconditionFailed("pullback of a non-cospan");
  const Arrow s = arrow(f.dom), t = arrow(k.dom);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> p0, p1;
  for (std::uint32_t i = 0; i < s.n0; ++i)
    for (std::uint32_t j = 0; j < t.n0; ++j)
      if (f.map[i] == k.map[j]) p0.emplace_back(i, j);
  for (std::uint32_t i = 0; i < s.n1; ++i)
    for (std::uint32_t j = 0; j < t.n1; ++j)
      if (f.map[s.n0 + i] == k.map[t.n0 + j]) p1.emplace_back(i, j);
  Arrow apex{p0.size(), p1.size(), {}};
  for (auto [i, j] : p0) {
    const auto target = std::make_pair(s.x[i], t.x[j]);
    apex.x.push_back(static_cast<std::uint32_t>(std::find(p1.begin(), p1.end(), target) - p1.begin()));
  }
  const ObjectId a = object(apex);
  PullbackWitness w{f, k, a, {a, f.dom, {}}, {a, k.dom, {}}};
  for (auto [i, j] : p0) {
    w.top.map.push_back(i);
    w.left.map.push_back(j);
  }
  for (auto [i, j] : p1) {
    w.top.map.push_back(static_cast<std::uint32_t>(s.n0 + i));
    w.left.map.push_back(static_cast<std::uint32_t>(t.n0 + j));
  }
  return w;
}

}  // namespace doctrina
