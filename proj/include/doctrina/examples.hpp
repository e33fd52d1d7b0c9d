#ifndef DOCTRINA_EXAMPLES_HPP
#define DOCTRINA_EXAMPLES_HPP

#include <functional>
#include <memory>

#include "doctrina/percompletion.hpp"
#include "doctrina/table.hpp"
#include "doctrina/valuation.hpp"

namespace doctrina {

/// A family of maps cl_A on the fibers of a doctrine, meant to be nuclei
/// natural in A.
struct ClosureOperator {
  std::string name;
  std::function<Elem(ObjectId, const Elem&)> apply;

  static ClosureOperator identity();
  // Pseudo-complement taken twice, each found by scanning the fiber.
  static ClosureOperator double_negation(const Doctrine& d);
  // A map on the algebra applied pointwise to a valuation doctrine.
  static ClosureOperator pointwise(const ValuationDoctrine& d, std::vector<ElementId> map, std::string name);
};

// Nucleus laws per fiber (inflationary, idempotent, monotone, meets) and
// naturality cl . f* = f* . cl over the morphisms among `objects`.
ValidationReport check_closure(const Doctrine& d, const ClosureOperator& cl, const std::vector<ObjectId>& objects,
                               std::uint64_t budget = kDefaultBudget);

/// Fibers are the fixed points of cl; order, meets and reindexing come from
/// the underlying doctrine, and exists is cl after the underlying exists.
class ClosedSubobjectDoctrine : public Doctrine {
 public:
  ClosedSubobjectDoctrine(const Doctrine& d, ClosureOperator cl) : d_(d), cl_(std::move(cl)) {}

  const Doctrine& underlying() const { return d_; }
  const ClosureOperator& closure() const { return cl_; }

  const Category& base() const override { return d_.base(); }
  bool leq(ObjectId a, const Elem& x, const Elem& y) const override { return d_.leq(a, x, y); }
  Elem meet(ObjectId a, const Elem& x, const Elem& y) const override { return d_.meet(a, x, y); }
  Elem top(ObjectId a) const override { return d_.top(a); }
  bool in_fiber(ObjectId a, const Elem& x) const override;
  bool for_each_element(ObjectId a, std::uint64_t budget,
                        const std::function<void(const Elem&)>& visit) const override;
  Elem reindex(const Morphism& f, const Elem& x) const override { return d_.reindex(f, x); }
  void reindex_into(const Morphism& f, const Elem& x, Elem& out) const override { d_.reindex_into(f, x, out); }
  Elem exists(const Morphism& f, const Elem& x) const override;
  bool declares_exists() const override { return true; }
  std::string render(ObjectId a, const Elem& x) const override { return d_.render(a, x); }

 private:
  const Doctrine& d_;
  ClosureOperator cl_;
};

// Throws PreconditionFailed ("naturality failure") when cl is not natural on
// `objects`; returns the underlying doctrine's twin for the identity.
std::unique_ptr<ClosedSubobjectDoctrine> closed_subobject_doctrine(const Doctrine& d, const ClosureOperator& cl,
                                                                   const std::vector<ObjectId>& objects);

/// Fixture parameters. `sizes` are carrier sizes (component bound for
/// arrow-presheaf); `closure` is "", "identity", "double-negation" or a
/// pointwise map given in `nucleus`.
struct FixtureSpec {
  std::string name;
  std::string algebra = "chain3";
  std::vector<std::size_t> sizes;
  std::size_t max_extent = 2;
  std::string closure;
  std::vector<ElementId> nucleus;
  std::uint64_t seed = 0;

  friend bool operator==(const FixtureSpec&, const FixtureSpec&) = default;
};

/// A generated doctrine together with whatever it is built on.
struct Fixture {
  FixtureSpec spec;
  std::vector<ObjectId> objects;  // the objects the fixture is about
  std::shared_ptr<const Doctrine> base;
  std::shared_ptr<const Doctrine> doctrine;
  ValidationReport build_report;
};

// Known names: finset-sub, localic, arrow-presheaf, per. Throws
// MalformedInput for unknown names and PreconditionFailed past size bounds.
Fixture gen_fixture(const FixtureSpec& spec);

// Defect-carrying table doctrines; each breaks exactly one law.
// Names: corrupted-reindex, delta-top, forall-as-exists, mem-top, and
// non-associative (one-object category with a bad composite).
TableDoctrine planted_defect(const std::string& name);
// A category table with one composite changed.
FiniteCategory non_associative_category();

// Objects of the arrow category among `objects` orthogonal to every dense
// mono into an object of `objects`. Density is computed with the set formula
// for double negation on arrows: S is dense in X iff S1 = X1.
std::vector<ObjectId> dense_orthogonal_objects(const ArrowCategory& c, const std::vector<ObjectId>& objects,
                                               std::uint64_t budget = kDefaultBudget);

}  // namespace doctrina

#endif
