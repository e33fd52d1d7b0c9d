#include "doctrina/lattice.hpp"

#include <algorithm>

#include "doctrina/error.hpp"

namespace doctrina {

namespace {

std::string pair_name(const FiniteMeetSemilattice& l, ElementId a, ElementId b) {
  return "(" + l.name(a) + "," + l.name(b) + ")";
}

// Greatest element among `cands` under `leq`, if there is one.
template <class Leq>
std::optional<ElementId> greatest(const std::vector<ElementId>& cands, Leq leq) {
  for (ElementId c : cands) {
    if (std::all_of(cands.begin(), cands.end(), [&](ElementId d) { return leq(d, c); })) return c;
  }
  return std::nullopt;
}

void check_table(const std::vector<ElementId>& t, std::size_t n, const char* what) {
  if (t.size() != n * n) throw MalformedInput(std::string(what) + " table is not total");
  for (ElementId v : t) {
    if (v >= n) throw MalformedInput(std::string(what) + " table has out-of-range entry");
  }
}

}  // namespace

FiniteMeetSemilattice::FiniteMeetSemilattice(std::vector<std::string> names, std::vector<char> leq,
                                             std::vector<ElementId> meet,
                                             std::optional<ElementId> top)
    : names_(std::move(names)), leq_(std::move(leq)), meet_(std::move(meet)) {
  const std::size_t n = names_.size();
  if (n == 0) throw MalformedInput("lattice has no elements");
  if (leq_.size() != n * n) throw MalformedInput("leq table is not total");
  if (meet_.empty()) {
    meet_.resize(n * n);
    for (ElementId a = 0; a < n; ++a) {
      for (ElementId b = 0; b < n; ++b) {
        std::vector<ElementId> lower;
        for (ElementId c = 0; c < n; ++c) {
          if (this->leq(c, a) && this->leq(c, b)) lower.push_back(c);
        }
        auto g = greatest(lower, [this](ElementId x, ElementId y) { return this->leq(x, y); });
        if (!g) throw MalformedInput("meet undefined: no greatest lower bound for " + pair_name(*this, a, b));
        meet_[a * n + b] = *g;
      }
    }
  } else {
    check_table(meet_, n, "meet");
  }
  if (top) {
    if (*top >= n) throw MalformedInput("top out of range");
    top_ = *top;
  } else {
    std::vector<ElementId> all(n);
    for (ElementId i = 0; i < n; ++i) all[i] = i;
    auto g = greatest(all, [this](ElementId x, ElementId y) { return this->leq(x, y); });
    if (!g) throw MalformedInput("no top element");
    top_ = *g;
  }
}

FiniteMeetSemilattice FiniteMeetSemilattice::from_pairs(
    std::vector<std::string> names, const std::vector<std::pair<ElementId, ElementId>>& pairs) {
  const std::size_t n = names.size();
  std::vector<char> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw MalformedInput("leq pair out of range");
    leq[a * n + b] = 1;
  }
  return FiniteMeetSemilattice(std::move(names), std::move(leq));
}

std::optional<ElementId> FiniteMeetSemilattice::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<ElementId>(it - names_.begin());
}

FiniteHeytingAlgebra::FiniteHeytingAlgebra(FiniteMeetSemilattice base, std::vector<ElementId> join,
                                           std::optional<ElementId> bottom,
                                           std::vector<ElementId> impl)
    : base_(std::move(base)), join_(std::move(join)), impl_(std::move(impl)) {
  const std::size_t n = base_.size();
  auto le = [this](ElementId x, ElementId y) { return base_.leq(x, y); };
  if (bottom) {
    if (*bottom >= n) throw MalformedInput("bottom out of range");
    bottom_ = *bottom;
  } else {
    std::vector<ElementId> all(n);
    for (ElementId i = 0; i < n; ++i) all[i] = i;
    auto g = greatest(all, [&](ElementId x, ElementId y) { return le(y, x); });
    if (!g) throw MalformedInput("no bottom element");
    bottom_ = *g;
  }
  if (join_.empty()) {
    join_.resize(n * n);
    for (ElementId a = 0; a < n; ++a) {
      for (ElementId b = 0; b < n; ++b) {
        std::vector<ElementId> upper;
        for (ElementId c = 0; c < n; ++c) {
          if (le(a, c) && le(b, c)) upper.push_back(c);
        }
        auto g = greatest(upper, [&](ElementId x, ElementId y) { return le(y, x); });
        if (!g) throw MalformedInput("join undefined: no least upper bound for " + pair_name(base_, a, b));
        join_[a * n + b] = *g;
      }
    }
  } else {
    check_table(join_, n, "join");
  }
  if (impl_.empty()) {
    impl_.resize(n * n);
    for (ElementId a = 0; a < n; ++a) {
      for (ElementId b = 0; b < n; ++b) {
        std::vector<ElementId> cands;
        for (ElementId c = 0; c < n; ++c) {
          if (le(base_.meet(c, a), b)) cands.push_back(c);
        }
        auto g = greatest(cands, le);
        if (!g) throw MalformedInput("implication undefined for " + pair_name(base_, a, b));
        impl_[a * n + b] = *g;
      }
    }
  } else {
    check_table(impl_, n, "impl");
  }
}

FiniteHeytingAlgebra FiniteHeytingAlgebra::chain(std::size_t n) {
  if (n == 0) throw MalformedInput("chain of length 0");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) names.push_back("0");
    else if (i + 1 == n) names.push_back("1");
    else names.push_back(std::to_string(i) + "/" + std::to_string(n - 1));
  }
  std::vector<char> leq(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) leq[a * n + b] = a <= b;
  FiniteHeytingAlgebra h(FiniteMeetSemilattice(std::move(names), std::move(leq)));
  h.set_label(n == 2 ? "bool2" : "chain" + std::to_string(n));
  return h;
}

FiniteHeytingAlgebra FiniteHeytingAlgebra::powerset(const std::vector<std::string>& atoms) {
  const std::size_t n = std::size_t{1} << atoms.size();
  std::vector<std::string> names;
  for (std::size_t m = 0; m < n; ++m) {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (m >> i & 1) {
        if (!first) s += ",";
        s += atoms[i];
        first = false;
      }
    }
    names.push_back(s + "}");
  }
  std::vector<char> leq(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) leq[a * n + b] = (a & ~b) == 0;
  FiniteHeytingAlgebra h(FiniteMeetSemilattice(std::move(names), std::move(leq)));
  std::string label = "bool";
  for (const auto& a : atoms) label += a;
  h.set_label(label);
  return h;
}

std::optional<FiniteHeytingAlgebra> FiniteHeytingAlgebra::named(const std::string& name) {
  if (name == "chain3") return chain(3);
  if (name == "bool2") return chain(2);
  if (name == "boolpq") return powerset({"p", "q"});
  if (name == "boolpqr") return powerset({"p", "q", "r"});
  return std::nullopt;
}

Nucleus Nucleus::identity(const FiniteHeytingAlgebra& h) {
  Nucleus j{&h, {}};
  for (ElementId a = 0; a < h.size(); ++a) j.map.push_back(a);
  return j;
}

Nucleus Nucleus::double_negation(const FiniteHeytingAlgebra& h) {
  Nucleus j{&h, {}};
  for (ElementId a = 0; a < h.size(); ++a) j.map.push_back(h.negation(h.negation(a)));
  return j;
}

ValidationReport validate_meet_semilattice(const FiniteMeetSemilattice& l) {
  ValidationReport r;
  const auto n = static_cast<ElementId>(l.size());
  for (ElementId a = 0; a < n; ++a) {
    if (!l.leq(a, a)) r.add("leq not reflexive", l.name(a));
    if (!l.leq(a, l.top())) r.add("top not maximum", l.name(a));
    for (ElementId b = 0; b < n; ++b) {
      if (a != b && l.leq(a, b) && l.leq(b, a)) r.add("leq not antisymmetric", pair_name(l, a, b));
      const ElementId m = l.meet(a, b);
      bool glb = l.leq(m, a) && l.leq(m, b);
      for (ElementId c = 0; c < n && glb; ++c) {
        if (l.leq(c, a) && l.leq(c, b) && !l.leq(c, m)) glb = false;
      }
      if (!glb) r.add("meet not greatest lower bound", pair_name(l, a, b));
      for (ElementId c = 0; c < n; ++c) {
        if (l.leq(a, b) && l.leq(b, c) && !l.leq(a, c)) {
          r.add("leq not transitive", "(" + l.name(a) + "," + l.name(b) + "," + l.name(c) + ")");
        }
      }
    }
  }
  return r;
}

ValidationReport validate_heyting(const FiniteHeytingAlgebra& h) {
  ValidationReport r = validate_meet_semilattice(h.base());
  const auto& l = h.base();
  const auto n = static_cast<ElementId>(h.size());
  for (ElementId a = 0; a < n; ++a) {
    if (!h.leq(h.bottom(), a)) r.add("bottom not minimum", h.name(a));
    for (ElementId b = 0; b < n; ++b) {
      const ElementId j = h.join(a, b);
      bool lub = h.leq(a, j) && h.leq(b, j);
      for (ElementId c = 0; c < n && lub; ++c) {
        if (h.leq(a, c) && h.leq(b, c) && !h.leq(j, c)) lub = false;
      }
      if (!lub) r.add("join not least upper bound", pair_name(l, a, b));
      bool residuation = true;
      for (ElementId c = 0; c < n; ++c) {
        if (h.leq(c, h.impl(a, b)) != h.leq(h.meet(c, a), b)) residuation = false;
        if (h.meet(a, h.join(b, c)) != h.join(h.meet(a, b), h.meet(a, c))) {
          r.add("not distributive", "(" + h.name(a) + "," + h.name(b) + "," + h.name(c) + ")");
        }
      }
      if (!residuation) r.add("impl not residuation", pair_name(l, a, b));
    }
  }
  return r;
}

ValidationReport validate_nucleus(const Nucleus& j) {
  ValidationReport r;
  if (j.algebra == nullptr) throw MalformedInput("nucleus without algebra");
  const auto& h = *j.algebra;
  const auto n = static_cast<ElementId>(h.size());
  if (j.map.size() != n) throw MalformedInput("nucleus table is not total");
  for (ElementId v : j.map) {
    if (v >= n) throw MalformedInput("nucleus table has out-of-range entry");
  }
  for (ElementId a = 0; a < n; ++a) {
    if (!h.leq(a, j(a))) r.add("not inflationary", h.name(a));
    if (j(j(a)) != j(a)) r.add("not idempotent", h.name(a));
    for (ElementId b = 0; b < n; ++b) {
      if (j(h.meet(a, b)) != h.meet(j(a), j(b))) r.add("not meet-preserving", pair_name(h.base(), a, b));
    }
  }
  return r;
}

ElementId implication(const FiniteHeytingAlgebra& h, ElementId a, ElementId b) {
  const auto n = static_cast<ElementId>(h.size());
  if (a >= n || b >= n) throw MalformedInput("element out of range");
  std::vector<ElementId> cands;
  for (ElementId c = 0; c < n; ++c) {
    if (h.leq(h.meet(c, a), b)) cands.push_back(c);
  }
  auto g = greatest(cands, [&](ElementId x, ElementId y) { return h.leq(x, y); });
  if (!g) throw MalformedInput("no greatest residual");
  return *g;
}

FiniteHeytingAlgebra fixed_point_algebra(const Nucleus& j) {
  const auto& h = *j.algebra;
  std::vector<ElementId> fixed;
  for (ElementId a = 0; a < h.size(); ++a) {
    if (j(a) == a) fixed.push_back(a);
  }
  const std::size_t n = fixed.size();
  auto index_of = [&](ElementId a) {
    return static_cast<ElementId>(std::find(fixed.begin(), fixed.end(), a) - fixed.begin());
  };
  std::vector<std::string> names;
  std::vector<char> leq(n * n);
  std::vector<ElementId> meet(n * n), join(n * n), impl(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    names.push_back(h.name(fixed[x]));
    for (std::size_t y = 0; y < n; ++y) {
      const ElementId a = fixed[x], b = fixed[y];
      leq[x * n + y] = h.leq(a, b);
      meet[x * n + y] = index_of(h.meet(a, b));
      join[x * n + y] = index_of(j(h.join(a, b)));
      impl[x * n + y] = index_of(h.impl(a, b));
    }
  }
  // Entries equal to n mean the derived operation left the fixed-point set;
  // the constructor rejects them as out of range.
  return FiniteHeytingAlgebra(FiniteMeetSemilattice(std::move(names), std::move(leq), std::move(meet),
                                                    index_of(h.top())),
                              std::move(join), index_of(j(h.bottom())), std::move(impl));
}

}  // namespace doctrina
