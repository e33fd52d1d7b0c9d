#ifndef DOCTRINA_VALUATION_HPP
#define DOCTRINA_VALUATION_HPP

#include <memory>

#include "doctrina/concrete.hpp"
#include "doctrina/doctrine.hpp"
#include "doctrina/lattice.hpp"

namespace doctrina {

/// Doctrines whose formulas over A are functions from the carrier of A into a
/// finite Heyting algebra, ordered pointwise. Each object has an extent
/// (the fiber top); reindexing is precomposition meet the extent of the
/// domain, and exists is the pointwise join over fibers of the underlying
/// function. Subclasses restrict which functions count as formulas.
class ValuationDoctrine : public Doctrine {
 public:
  explicit ValuationDoctrine(FiniteHeytingAlgebra h) : h_(std::move(h)) {}

  const FiniteHeytingAlgebra& algebra() const { return h_; }
  virtual const ConcreteCategory& concrete() const = 0;
  const Category& base() const override { return concrete(); }

  // Top of P(a); all-top unless overridden.
  virtual Elem extent(ObjectId a) const;

  bool leq(ObjectId a, const Elem& x, const Elem& y) const override;
  Elem meet(ObjectId a, const Elem& x, const Elem& y) const override;
  Elem top(ObjectId a) const override { return extent(a); }
  bool in_fiber(ObjectId a, const Elem& x) const override;
  bool for_each_element(ObjectId a, std::uint64_t budget,
                        const std::function<void(const Elem&)>& visit) const override;
  std::optional<Elem> sample_element(ObjectId a, std::mt19937_64& rng) const override;

  Elem reindex(const Morphism& f, const Elem& x) const override;
  void reindex_into(const Morphism& f, const Elem& x, Elem& out) const override;
  Elem exists(const Morphism& f, const Elem& x) const override;
  bool declares_exists() const override { return true; }

  std::string render(ObjectId a, const Elem& x) const override;

 protected:
  // Constraints between coordinate i and the coordinates before it, checked
  // during enumeration; `x` has at least i+1 entries.
  virtual bool consistent(ObjectId, const Elem&, std::size_t) const { return true; }
  // False when some extent is not all-top, so reindexing must meet with it.
  virtual bool uniform_extent() const { return true; }

 private:
  FiniteHeytingAlgebra h_;
};

/// The localic doctrine H^(-) over finite sets: P(A) = H^A, with pointwise
/// implication and forall as the meet over fibers. For H = 2 this is the
/// subset doctrine. Power objects are H^X, encoded base |H| with the value
/// at point x as the x-th digit.
class LocalicDoctrine : public ValuationDoctrine {
 public:
  explicit LocalicDoctrine(FiniteHeytingAlgebra h) : ValuationDoctrine(std::move(h)) {}

  const ConcreteCategory& concrete() const override { return sets_; }
  const FinSet& sets() const { return sets_; }
  ObjectId object(std::size_t n) const { return sets_.object(n); }

  std::optional<Elem> implies(ObjectId a, const Elem& x, const Elem& y) const override;
  std::optional<Elem> forall(const Morphism& f, const Elem& x) const override;
  // The inclusion of {x | alpha(x) = top}.
  std::optional<Morphism> comprehension_candidate(ObjectId a, const Elem& alpha) const override;
  std::optional<PowerObjectWitness> power_object(ObjectId x) const override;

 private:
  FinSet sets_;
};

/// Subpresheaves of objects of the arrow category: S0 in X0, S1 in X1 with
/// x(S0) in S1. Values are 0/1 over the carrier X0 + X1.
class PresheafSubDoctrine : public ValuationDoctrine {
 public:
  PresheafSubDoctrine();

  const ConcreteCategory& concrete() const override { return arrows_; }
  const ArrowCategory& arrows() const { return arrows_; }

  // The subobject itself, as an arrow with the restricted structure map.
  std::optional<Morphism> comprehension_candidate(ObjectId a, const Elem& alpha) const override;
  std::string render(ObjectId a, const Elem& x) const override;

 protected:
  bool consistent(ObjectId a, const Elem& x, std::size_t i) const override;

 private:
  ArrowCategory arrows_;
};

}  // namespace doctrina

#endif
