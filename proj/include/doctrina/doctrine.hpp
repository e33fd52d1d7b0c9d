#ifndef DOCTRINA_DOCTRINE_HPP
#define DOCTRINA_DOCTRINE_HPP

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "doctrina/category.hpp"
#include "doctrina/fincat.hpp"
#include "doctrina/report.hpp"

namespace doctrina {

using Value = std::uint16_t;
// Encoding of a fiber element. Table doctrines use a single element id;
// valuation doctrines use one algebra value per carrier point.
using Elem = std::vector<Value>;

/// An element of a fiber P(A).
struct Formula {
  ObjectId object = 0;
  Elem element;
};

struct ComprehensionWitness {
  ObjectId object = 0;  // the object alpha lives over
  Elem alpha;
  Morphism incl;        // incl: X -> object
  bool mono = false;
};

/// Membership formula over X x PX, plus an optional closed-form transpose.
/// Without a transpose, {gamma} is found by scanning hom(Y, PX).
struct PowerObjectWitness {
  ObjectId x = 0;
  ObjectId px = 0;
  Elem mem;
  std::function<std::optional<Morphism>(ObjectId y, const Elem& gamma)> transpose;
};

/// A doctrine P: C^op -> ISL over a finite base.
///
/// Fibers are posets with binary meets and a top; equality of formulas is
/// equality of encodings. The existential image defaults to the least-upper
/// scan (the least beta with alpha <= f*beta), which needs an enumerable
/// codomain fiber; subclasses with large fibers supply a closed form and the
/// law checkers cross-validate it against reindexing.
class Doctrine {
 public:
  virtual ~Doctrine() = default;

  virtual const Category& base() const = 0;

  virtual bool leq(ObjectId a, const Elem& x, const Elem& y) const = 0;
  virtual Elem meet(ObjectId a, const Elem& x, const Elem& y) const = 0;
  virtual Elem top(ObjectId a) const = 0;
  virtual bool in_fiber(ObjectId a, const Elem& x) const = 0;

  // Visits elements of P(a) in canonical order. Returns false once more than
  // `budget` elements would be visited; the visit then stops.
  virtual bool for_each_element(ObjectId a, std::uint64_t budget,
                                const std::function<void(const Elem&)>& visit) const = 0;
  // A pseudo-random element of P(a), for sampled sweeps.
  virtual std::optional<Elem> sample_element(ObjectId a, std::mt19937_64& rng) const;

  virtual Elem reindex(const Morphism& f, const Elem& x) const = 0;
  virtual void reindex_into(const Morphism& f, const Elem& x, Elem& out) const { out = reindex(f, x); }
  virtual Elem exists(const Morphism& f, const Elem& x) const;
  // True when exists() is a closed form rather than the least-upper scan.
  virtual bool declares_exists() const { return false; }

  // First-order witnesses consumed by the PER completion.
  virtual std::optional<Elem> implies(ObjectId, const Elem&, const Elem&) const { return std::nullopt; }
  virtual std::optional<Elem> forall(const Morphism&, const Elem&) const { return std::nullopt; }

  // A comprehension the doctrine proposes for alpha; verified by callers.
  virtual std::optional<Morphism> comprehension_candidate(ObjectId, const Elem&) const { return std::nullopt; }
  virtual std::optional<PowerObjectWitness> power_object(ObjectId) const { return std::nullopt; }

  virtual std::string render(ObjectId a, const Elem& x) const = 0;

  std::optional<std::vector<Elem>> fiber(ObjectId a, std::uint64_t budget = kDefaultBudget) const;
  // delta_A = exists along the diagonal of top, cached per object.
  const Elem& equality(ObjectId a) const;
  Elem bottom(ObjectId a, std::uint64_t budget = kDefaultBudget) const;

 private:
  mutable CacheLock lock_;
  mutable std::map<ObjectId, Elem> delta_cache_;
};

/// Which objects and squares a law sweep covers.
struct LawScope {
  std::vector<ObjectId> objects;
  // Pullback squares for Beck-Chevalley; when empty, every cospan among
  // `objects` is pulled back with the category's chosen pullbacks.
  std::vector<PullbackWitness> pullbacks;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
};

// Every element of P(a), or a seeded sample when the fiber exceeds the
// scope budget; sampling marks the report and notes the object.
std::vector<Elem> sweep_fiber(const Doctrine& d, ObjectId a, const LawScope& scope, ValidationReport& r);

// Functoriality of reindexing, preservation of top and meets, fiber closure.
ValidationReport validate_doctrine(const Doctrine& d, const LawScope& scope);

// The least beta with alpha <= f*beta, computed by scanning P(cod f). When
// the doctrine declares a closed form the two must agree (WitnessFailure
// "table-disagreement" otherwise). Falls back to the declared form when the
// codomain fiber exceeds the budget.
Elem exists_along(const Doctrine& d, const Morphism& f, const Elem& alpha,
                  std::uint64_t budget = kDefaultBudget);

// Adjunction, Beck-Chevalley and Frobenius over the scope.
ValidationReport check_existential_laws(const Doctrine& d, const LawScope& scope);

Elem equality_predicate(const Doctrine& d, ObjectId a);

// Reflexivity and substitutivity of delta_A for every X in the scope, and the
// decomposition exists_f(alpha) = exists_{pi1}((id x f)* delta_B /\ pi2* alpha).
ValidationReport check_equality_laws(const Doctrine& d, const std::vector<ObjectId>& targets,
                                     const LawScope& scope);

std::optional<ComprehensionWitness> find_comprehension(const Doctrine& d, ObjectId a, const Elem& alpha,
                                                       const std::vector<ObjectId>& probes,
                                                       std::uint64_t budget = kDefaultBudget);
std::optional<ComprehensionWitness> image(const Doctrine& d, const Morphism& f,
                                          const std::vector<ObjectId>& probes,
                                          std::uint64_t budget = kDefaultBudget);

// Residuation of implies per fiber and f* -| forall_f.
ValidationReport check_first_order(const Doctrine& d, const LawScope& scope);

// Every morphism among the objects, as canonical representatives.
std::vector<Morphism> morphisms_among(const Category& c, const std::vector<ObjectId>& objects,
                                      std::uint64_t budget = kDefaultBudget);

}  // namespace doctrina

#endif
