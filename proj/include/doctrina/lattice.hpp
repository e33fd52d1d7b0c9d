#ifndef DOCTRINA_LATTICE_HPP
#define DOCTRINA_LATTICE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "doctrina/report.hpp"

namespace doctrina {

using ElementId = std::uint32_t;

/// A finite inf-semilattice given by explicit tables over dense ids 0..n-1.
///
/// Construction only checks that the tables are total and in range
/// (MalformedInput otherwise). The order and meet laws are checked by
/// validate_meet_semilattice, which reports every violation it finds.
class FiniteMeetSemilattice {
 public:
  FiniteMeetSemilattice() = default;

  // `leq` is an n*n row-major table. An empty `meet` is derived from the order
  // by scan; a supplied one is kept as-is and cross-checked by validation.
  FiniteMeetSemilattice(std::vector<std::string> names, std::vector<char> leq,
                        std::vector<ElementId> meet = {},
                        std::optional<ElementId> top = std::nullopt);

  // Convenience: order given as a list of strict or non-strict pairs, closed
  // reflexively (but not transitively, so planted defects survive).
  static FiniteMeetSemilattice from_pairs(std::vector<std::string> names,
                                          const std::vector<std::pair<ElementId, ElementId>>& pairs);

  std::size_t size() const { return names_.size(); }
  const std::string& name(ElementId a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<ElementId> find(const std::string& name) const;

  bool leq(ElementId a, ElementId b) const { return leq_[a * size() + b] != 0; }
  ElementId meet(ElementId a, ElementId b) const { return meet_[a * size() + b]; }
  ElementId top() const { return top_; }

  const std::vector<char>& leq_table() const { return leq_; }
  const std::vector<ElementId>& meet_table() const { return meet_; }

  // Overwrite one meet entry; used to plant defects in tests.
  void set_meet(ElementId a, ElementId b, ElementId v) { meet_[a * size() + b] = v; }

 private:
  std::vector<std::string> names_;
  std::vector<char> leq_;
  std::vector<ElementId> meet_;
  ElementId top_ = 0;
};

/// Finite Heyting algebra: a meet-semilattice plus join, bottom and
/// implication tables (each derivable from the order when omitted).
class FiniteHeytingAlgebra {
 public:
  FiniteHeytingAlgebra() = default;
  FiniteHeytingAlgebra(FiniteMeetSemilattice base, std::vector<ElementId> join = {},
                       std::optional<ElementId> bottom = std::nullopt,
                       std::vector<ElementId> impl = {});

  // n-element chain 0 < 1/(n-1) < ... < 1.
  static FiniteHeytingAlgebra chain(std::size_t n);
  // Powerset of the given atoms, ordered by inclusion. Elements are indexed
  // by bitmask; names render as "{p,q}".
  static FiniteHeytingAlgebra powerset(const std::vector<std::string>& atoms);
  // "chain3", "bool2" (= chain(2)), "boolpq" (powerset of {p,q}), "boolpqr"; nullopt otherwise.
  static std::optional<FiniteHeytingAlgebra> named(const std::string& name);

  const FiniteMeetSemilattice& base() const { return base_; }
  std::size_t size() const { return base_.size(); }
  const std::string& name(ElementId a) const { return base_.name(a); }
  std::optional<ElementId> find(const std::string& n) const { return base_.find(n); }

  bool leq(ElementId a, ElementId b) const { return base_.leq(a, b); }
  ElementId meet(ElementId a, ElementId b) const { return base_.meet(a, b); }
  ElementId join(ElementId a, ElementId b) const { return join_[a * size() + b]; }
  ElementId impl(ElementId a, ElementId b) const { return impl_[a * size() + b]; }
  ElementId top() const { return base_.top(); }
  ElementId bottom() const { return bottom_; }
  ElementId negation(ElementId a) const { return impl(a, bottom_); }

  const std::vector<ElementId>& join_table() const { return join_; }
  const std::vector<ElementId>& impl_table() const { return impl_; }
  void set_impl(ElementId a, ElementId b, ElementId v) { impl_[a * size() + b] = v; }

  // Label recorded when the algebra came from a named constructor.
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }

 private:
  FiniteMeetSemilattice base_;
  std::vector<ElementId> join_;
  std::vector<ElementId> impl_;
  ElementId bottom_ = 0;
  std::string label_;
};

/// A unary map on a Heyting algebra meant to be a nucleus.
struct Nucleus {
  const FiniteHeytingAlgebra* algebra = nullptr;
  std::vector<ElementId> map;

  ElementId operator()(ElementId a) const { return map[a]; }
  static Nucleus identity(const FiniteHeytingAlgebra& h);
  static Nucleus double_negation(const FiniteHeytingAlgebra& h);
};

ValidationReport validate_meet_semilattice(const FiniteMeetSemilattice& l);
ValidationReport validate_heyting(const FiniteHeytingAlgebra& h);
ValidationReport validate_nucleus(const Nucleus& j);

// Greatest c with c /\ a <= b, found by scanning every c.
ElementId implication(const FiniteHeytingAlgebra& h, ElementId a, ElementId b);

// Fixed points of j with inherited order and meet, join j(a \/ b).
FiniteHeytingAlgebra fixed_point_algebra(const Nucleus& j);

}  // namespace doctrina

#endif
