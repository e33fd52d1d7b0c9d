#ifndef DOCTRINA_TABLE_HPP
#define DOCTRINA_TABLE_HPP

#include <map>

#include "doctrina/doctrine.hpp"
#include "doctrina/lattice.hpp"

namespace doctrina {

/// A doctrine given extensionally: a named meet-semilattice per object and a
/// reindexing table per morphism. Elements are single ids. Declared exists,
/// implication, forall, comprehension and power-object tables are optional
/// and always cross-checked by the law checkers, never trusted.
class TableDoctrine : public Doctrine {
 public:
  explicit TableDoctrine(FiniteCategory c) : c_(std::move(c)) {}

  const Category& base() const override { return c_; }
  const FiniteCategory& category() const { return c_; }

  void add_lattice(const std::string& name, FiniteMeetSemilattice l);
  void set_fiber(ObjectId a, const std::string& lattice);
  // map[i] = f*(i), indexed by elements of P(cod f).
  void set_reindex(MorphismId f, std::vector<ElementId> map);
  void set_exists(MorphismId f, std::vector<ElementId> map);
  void set_implies(ObjectId a, std::vector<ElementId> table);
  void set_forall(MorphismId f, std::vector<ElementId> map);
  void set_comprehension(ObjectId a, ElementId alpha, MorphismId incl);
  void set_power_object(ObjectId x, ObjectId px, ElementId mem);

  const std::map<std::string, FiniteMeetSemilattice>& lattices() const { return lattices_; }
  const std::string& fiber_name(ObjectId a) const;
  const FiniteMeetSemilattice& lattice(ObjectId a) const;
  const std::vector<ElementId>& reindex_table(MorphismId f) const;
  const std::map<MorphismId, std::vector<ElementId>>& exists_tables() const { return exists_; }
  const std::map<ObjectId, std::vector<ElementId>>& implies_tables() const { return implies_; }
  const std::map<MorphismId, std::vector<ElementId>>& forall_tables() const { return forall_; }
  const std::map<std::pair<ObjectId, ElementId>, MorphismId>& comprehensions() const { return comprehensions_; }
  const std::map<ObjectId, std::pair<ObjectId, ElementId>>& power_objects() const { return powers_; }

  // Every object has a fiber and every morphism a total in-range table.
  // Throws MalformedInput ("missing-fiber", "missing-reindex") otherwise.
  void check_complete() const;

  bool leq(ObjectId a, const Elem& x, const Elem& y) const override;
  Elem meet(ObjectId a, const Elem& x, const Elem& y) const override;
  Elem top(ObjectId a) const override;
  bool in_fiber(ObjectId a, const Elem& x) const override;
  bool for_each_element(ObjectId a, std::uint64_t budget,
                        const std::function<void(const Elem&)>& visit) const override;
  Elem reindex(const Morphism& f, const Elem& x) const override;
  Elem exists(const Morphism& f, const Elem& x) const override;
  bool declares_exists() const override { return !exists_.empty(); }
  std::optional<Elem> implies(ObjectId a, const Elem& x, const Elem& y) const override;
  std::optional<Elem> forall(const Morphism& f, const Elem& x) const override;
  std::optional<Morphism> comprehension_candidate(ObjectId a, const Elem& alpha) const override;
  std::optional<PowerObjectWitness> power_object(ObjectId x) const override;
  std::string render(ObjectId a, const Elem& x) const override;

 private:
  FiniteCategory c_;
  std::map<std::string, FiniteMeetSemilattice> lattices_;
  std::map<ObjectId, std::string> fibers_;
  std::map<MorphismId, std::vector<ElementId>> reindex_;
  std::map<MorphismId, std::vector<ElementId>> exists_;
  std::map<ObjectId, std::vector<ElementId>> implies_;
  std::map<MorphismId, std::vector<ElementId>> forall_;
  std::map<std::pair<ObjectId, ElementId>, MorphismId> comprehensions_;
  std::map<ObjectId, std::pair<ObjectId, ElementId>> powers_;
};

// Tables for the full subcategory of `d` on `objects`: every fiber is
// enumerated and turned into a named semilattice, and every declared witness
// that stays inside the tabulated objects is carried over. Throws
// PreconditionFailed when a fiber exceeds the budget.
TableDoctrine tabulate_doctrine(const Doctrine& d, const std::vector<ObjectId>& objects,
                                std::uint64_t budget = 4096);

}  // namespace doctrina

#endif
