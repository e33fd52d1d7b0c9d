#include "doctrina/valuation.hpp"

#include "doctrina/error.hpp"

namespace doctrina {

Elem ValuationDoctrine::extent(ObjectId a) const {
  return Elem(concrete().carrier(a), static_cast<Value>(h_.top()));
}

bool ValuationDoctrine::leq(ObjectId, const Elem& x, const Elem& y) const {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!h_.leq(x[i], y[i])) return false;
  }
  return true;
}

Elem ValuationDoctrine::meet(ObjectId, const Elem& x, const Elem& y) const {
  Elem out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<Value>(h_.meet(x[i], y[i]));
  return out;
}

bool ValuationDoctrine::in_fiber(ObjectId a, const Elem& x) const {
  const Elem ext = extent(a);
  if (x.size() != ext.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= h_.size() || !h_.leq(x[i], ext[i])) return false;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!consistent(a, x, i)) return false;
  }
  return true;
}

bool ValuationDoctrine::for_each_element(ObjectId a, std::uint64_t budget,
                                         const std::function<void(const Elem&)>& visit) const {
  const Elem ext = extent(a);
  const std::size_t n = ext.size();
  std::vector<std::vector<Value>> choices(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (ElementId v = 0; v < h_.size(); ++v) {
      if (h_.leq(v, ext[i])) choices[i].push_back(static_cast<Value>(v));
    }
  }
  Elem x(n, 0);
  std::uint64_t count = 0;
  // Depth-first over coordinates, pruning with consistent().
  auto walk = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) {
      if (++count > budget) return false;
      visit(x);
      return true;
    }
    for (Value v : choices[i]) {
      x[i] = v;
      if (consistent(a, x, i) && !self(self, i + 1)) return false;
    }
    return true;
  };
  return walk(walk, 0);
}

std::optional<Elem> ValuationDoctrine::sample_element(ObjectId a, std::mt19937_64& rng) const {
  const Elem ext = extent(a);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Elem x(ext.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::vector<Value> below;
      for (ElementId v = 0; v < h_.size(); ++v) {
        if (h_.leq(v, ext[i])) below.push_back(static_cast<Value>(v));
      }
      x[i] = below[std::uniform_int_distribution<std::size_t>(0, below.size() - 1)(rng)];
    }
    if (in_fiber(a, x)) return x;
  }
  return std::nullopt;
}

Elem ValuationDoctrine::reindex(const Morphism& f, const Elem& x) const {
  Elem out;
  reindex_into(f, x, out);
  return out;
}

void ValuationDoctrine::reindex_into(const Morphism& f, const Elem& x, Elem& out) const {
  out.resize(f.map.size());
  for (std::size_t i = 0; i < f.map.size(); ++i) out[i] = x[f.map[i]];
  if (!uniform_extent()) {
    const Elem ext = extent(f.dom);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Value>(h_.meet(out[i], ext[i]));
  }
}

Elem ValuationDoctrine::exists(const Morphism& f, const Elem& x) const {
  Elem out(concrete().carrier(f.cod), static_cast<Value>(h_.bottom()));
  for (std::size_t i = 0; i < f.map.size(); ++i) {
    out[f.map[i]] = static_cast<Value>(h_.join(out[f.map[i]], x[i]));
  }
  return out;
}

std::string ValuationDoctrine::render(ObjectId, const Elem& x) const {
  std::string s;
  if (h_.size() == 2) {
    s = "{";
    bool first = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != h_.top()) continue;
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
    return s + "}";
  }
  s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) s += ",";
    s += h_.name(x[i]);
  }
  return s + ")";
}

std::optional<Elem> LocalicDoctrine::implies(ObjectId, const Elem& x, const Elem& y) const {
  Elem out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<Value>(algebra().impl(x[i], y[i]));
  return out;
}

std::optional<Elem> LocalicDoctrine::forall(const Morphism& f, const Elem& x) const {
  const auto& h = algebra();
  Elem out(sets_.carrier(f.cod), static_cast<Value>(h.top()));
  for (std::size_t i = 0; i < f.map.size(); ++i) {
    out[f.map[i]] = static_cast<Value>(h.meet(out[f.map[i]], x[i]));
  }
  return out;
}

std::optional<Morphism> LocalicDoctrine::comprehension_candidate(ObjectId a, const Elem& alpha) const {
  std::vector<std::uint32_t> points;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == algebra().top()) points.push_back(static_cast<std::uint32_t>(i));
  }
  return Morphism{sets_.object(points.size()), a, std::move(points)};
}

std::optional<PowerObjectWitness> LocalicDoctrine::power_object(ObjectId x) const {
  const std::size_t n = sets_.carrier(x);
  const std::size_t base = algebra().size();
  std::size_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    size *= base;
    if (size > (std::size_t{1} << 20)) return std::nullopt;
  }
  PowerObjectWitness w;
  w.x = x;
  w.px = sets_.object(size);
  w.mem.resize(n * size);
  for (std::size_t phi = 0; phi < size; ++phi) {
    std::size_t rest = phi;
    for (std::size_t p = 0; p < n; ++p) {
      w.mem[p * size + phi] = static_cast<Value>(rest % base);
      rest /= base;
    }
  }
  const FinSet* sets = &sets_;
  const ObjectId px = w.px;
  w.transpose = [sets, n, base, px](ObjectId y, const Elem& gamma) -> std::optional<Morphism> {
    const std::size_t m = sets->carrier(y);
    if (gamma.size() != n * m) return std::nullopt;
    Morphism g{y, px, std::vector<std::uint32_t>(m, 0)};
    for (std::size_t q = 0; q < m; ++q) {
      std::size_t code = 0;
      for (std::size_t p = n; p-- > 0;) code = code * base + gamma[p * m + q];
      g.map[q] = static_cast<std::uint32_t>(code);
    }
    return g;
  };
  return w;
}

PresheafSubDoctrine::PresheafSubDoctrine() : ValuationDoctrine(FiniteHeytingAlgebra::chain(2)) {}

bool PresheafSubDoctrine::consistent(ObjectId a, const Elem& x, std::size_t i) const {
  const auto& ar = arrows_.arrow(a);
  if (i < ar.n0) return true;
  const std::size_t j = i - ar.n0;
  if (x[i] != 0) return true;
  for (std::size_t k = 0; k < ar.n0; ++k) {
    if (ar.x[k] == j && x[k] != 0) return false;
  }
  return true;
}

std::optional<Morphism> PresheafSubDoctrine::comprehension_candidate(ObjectId a, const Elem& alpha) const {
  const auto ar = arrows_.arrow(a);
  std::vector<std::uint32_t> s0, s1;
  std::vector<std::uint32_t> pos1(ar.n1, 0);
  for (std::uint32_t k = 0; k < ar.n1; ++k) {
    if (alpha[ar.n0 + k] != 0) {
      pos1[k] = static_cast<std::uint32_t>(s1.size());
      s1.push_back(k);
    }
  }
  ArrowCategory::Arrow sub{0, s1.size(), {}};
  for (std::uint32_t k = 0; k < ar.n0; ++k) {
    if (alpha[k] == 0) continue;
    if (alpha[ar.n0 + ar.x[k]] == 0) return std::nullopt;
    s0.push_back(k);
    sub.x.push_back(pos1[ar.x[k]]);
  }
  sub.n0 = s0.size();
  Morphism m{arrows_.object(sub), a, s0};
  for (auto k : s1) m.map.push_back(static_cast<std::uint32_t>(ar.n0) + k);
  return m;
}

std::string PresheafSubDoctrine::render(ObjectId a, const Elem& x) const {
  const auto& ar = arrows_.arrow(a);
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i == ar.n0) {
      s += "|";
      first = true;
    }
    if (x[i] == 0) continue;
    if (!first) s += ",";
    s += std::to_string(i < ar.n0 ? i : i - ar.n0);
    first = false;
  }
  if (x.size() == ar.n0) s += "|";
  return s + "}";
}

}  // namespace doctrina
