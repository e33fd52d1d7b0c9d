#ifndef DOCTRINA_PERCOMPLETION_HPP
#define DOCTRINA_PERCOMPLETION_HPP

#include <deque>
#include <map>

#include "doctrina/sheafify.hpp"
#include "doctrina/valuation.hpp"

namespace doctrina {

/// A partial equivalence relation on a finite carrier, valued in the algebra.
/// `rho` is n*n row-major.
struct PerObject {
  std::size_t n = 0;
  std::vector<Value> rho;

  Value at(std::size_t x, std::size_t y) const { return rho[x * n + y]; }
  friend auto operator<=>(const PerObject&, const PerObject&) = default;
};

/// Pairs (A, rho) and classes [f] of tracking functions. A function f tracks
/// when rho <= (f x f)* sigma; f ~ g when rho(x,x) <= sigma(f x, g x). The
/// representative of a class takes, at every point, the least value allowed.
class PerCategory : public ConcreteCategory {
 public:
  explicit PerCategory(const FiniteHeytingAlgebra& h) : h_(&h) {}

  ObjectId object(const PerObject& p) const;
  const PerObject& per(ObjectId a) const;
  std::size_t object_count() const;

  std::size_t carrier(ObjectId a) const override { return per(a).n; }
  bool is_morphism(const Morphism& m) const override;
  bool equal(const Morphism& a, const Morphism& b) const override;
  Morphism canonical(const Morphism& m) const override;
  // Every member of the class of m, or nullopt past the budget.
  std::optional<std::vector<Morphism>> members(const Morphism& m, std::uint64_t budget = kDefaultBudget) const;

  std::string object_name(ObjectId a) const override;
  std::optional<std::vector<Morphism>> hom(ObjectId x, ObjectId y, std::uint64_t budget) const override;
  std::optional<ObjectId> terminal() const override;
  Morphism to_terminal(ObjectId a) const override;
  std::optional<ProductWitness> product(ObjectId a, ObjectId b) const override;
  Morphism pair(const ProductWitness& w, const Morphism& f, const Morphism& g) const override;
  std::optional<PullbackWitness> pullback(const Morphism& f, const Morphism& k) const override;

 private:
  const FiniteHeytingAlgebra* h_;
  mutable CacheLock lock_;
  mutable std::deque<PerObject> pers_;
  mutable std::map<PerObject, ObjectId> ids_;
  mutable std::map<std::pair<ObjectId, ObjectId>, ProductWitness> products_;
};

// Every symmetric transitive relation on n points, in increasing order.
std::vector<PerObject> enumerate_pers(const FiniteHeytingAlgebra& h, std::size_t n);

struct PerLimits {
  std::vector<std::size_t> base_sizes{1, 2};
  // Largest number of points x with rho(x,x) above bottom.
  std::size_t max_extent = 2;
};

/// The completed doctrine: P(A,rho) holds the phi with phi(x) <= rho(x,x) and
/// phi(x) /\ rho(x,y) <= phi(y); reindexing along [f] is f* phi /\ diagonal
/// of rho. Products, exists, implication, forall, comprehensions and power
/// objects are constructed here and trusted only after the law checkers run.
class PerDoctrine : public ValuationDoctrine {
 public:
  explicit PerDoctrine(FiniteHeytingAlgebra h);
  PerDoctrine(const PerDoctrine&) = delete;
  PerDoctrine& operator=(const PerDoctrine&) = delete;

  const ConcreteCategory& concrete() const override { return cat_; }
  const PerCategory& pers() const { return cat_; }
  ObjectId object(const PerObject& p) const { return cat_.object(p); }
  // The enumerated objects, in enumeration order.
  const std::vector<ObjectId>& objects() const { return objects_; }

  Elem extent(ObjectId a) const override;
  Elem exists(const Morphism& f, const Elem& x) const override;
  std::optional<Elem> implies(ObjectId a, const Elem& x, const Elem& y) const override;
  std::optional<Elem> forall(const Morphism& f, const Elem& x) const override;
  // (A, rho restricted to alpha) with the identity function as inclusion.
  std::optional<Morphism> comprehension_candidate(ObjectId a, const Elem& alpha) const override;
  // Carried by all H-valued functions on A with the strict-extensional
  // equality; nullopt when |H|^n exceeds 1024.
  std::optional<PowerObjectWitness> power_object(ObjectId a) const override;

  // rho of (A, rho) as a formula over the product.
  Elem relation(ObjectId a) const;

 protected:
  bool consistent(ObjectId a, const Elem& x, std::size_t i) const override;
  bool uniform_extent() const override { return false; }

 private:
  friend std::unique_ptr<PerDoctrine> build_per_completion(const LocalicDoctrine&, const PerLimits&,
                                                           ValidationReport&);
  PerCategory cat_;
  std::vector<ObjectId> objects_;
};

// Requires the first-order witnesses of d (MalformedInput otherwise). The
// structural checks on the result go into `report`: fiber invariants,
// validate_doctrine and the existential laws on the enumerated objects,
// delta = rho, and independence of reindexing from class representatives.
std::unique_ptr<PerDoctrine> build_per_completion(const LocalicDoctrine& d, const PerLimits& limits,
                                                  ValidationReport& report);

struct ToposCorrespondence {
  std::vector<ObjectId> sheaves;  // probes found to be sheaves
  ReflectionData reflection;
  ValidationReport report;
};

// Power objects and singletons on the probes, the reflector, and
// check_equivalences.
ToposCorrespondence check_topos_correspondence(const PerDoctrine& d, const std::vector<ObjectId>& probes,
                                               const LawScope& scope);

}  // namespace doctrina

#endif
