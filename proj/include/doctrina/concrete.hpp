#ifndef DOCTRINA_CONCRETE_HPP
#define DOCTRINA_CONCRETE_HPP

#include <deque>
#include <map>
#include <vector>

#include "doctrina/category.hpp"
#include "doctrina/fincat.hpp"

namespace doctrina {

/// A category whose objects have finite carriers and whose morphisms are
/// (classes of) functions between them. Composition is composition of the
/// underlying functions.
class ConcreteCategory : public Category {
 public:
  virtual std::size_t carrier(ObjectId a) const = 0;
  // Whether `m.map` is (a representative of) a morphism m.dom -> m.cod.
  virtual bool is_morphism(const Morphism& m) const = 0;

  std::string morphism_name(const Morphism& m) const override;
  Morphism identity(ObjectId a) const override;
  Morphism compose(const Morphism& g, const Morphism& f) const override;
  // Tries the pointwise preimage first, then falls back to a hom scan.
  std::optional<Morphism> factor_through(const Morphism& m, const Morphism& g,
                                         std::uint64_t budget = kDefaultBudget) const override;
};

/// Finite sets and all functions. Objects are interned by cardinality;
/// products are encoded row-major, (i,j) -> i*|B| + j.
class FinSet : public ConcreteCategory {
 public:
  ObjectId object(std::size_t n) const;
  std::size_t carrier(ObjectId a) const override;
  bool is_morphism(const Morphism& m) const override;

  std::string object_name(ObjectId a) const override;
  std::optional<std::vector<Morphism>> hom(ObjectId x, ObjectId y, std::uint64_t budget) const override;
  std::optional<ObjectId> terminal() const override { return object(1); }
  Morphism to_terminal(ObjectId a) const override;
  std::optional<ProductWitness> product(ObjectId a, ObjectId b) const override;
  Morphism pair(const ProductWitness& w, const Morphism& f, const Morphism& g) const override;
  std::optional<PullbackWitness> pullback(const Morphism& f, const Morphism& k) const override;

 private:
  mutable CacheLock lock_;
  mutable std::vector<std::size_t> sizes_;
  mutable std::map<std::size_t, ObjectId> ids_;
};

/// The arrow category of finite sets: objects are functions x: X0 -> X1,
/// morphisms are commuting pairs (f0, f1). This is the presheaf category on
/// the two-element poset, with X0 restricting into X1. The carrier is the
/// disjoint union X0 + X1 and the underlying function is f0 + f1.
class ArrowCategory : public ConcreteCategory {
 public:
  struct Arrow {
    std::size_t n0 = 0;
    std::size_t n1 = 0;
    std::vector<std::uint32_t> x;  // X0 -> X1

    friend auto operator<=>(const Arrow&, const Arrow&) = default;
  };

  ObjectId object(const Arrow& a) const;
  const Arrow& arrow(ObjectId a) const;
  // Every arrow with |X0|, |X1| <= n, in interning order.
  std::vector<ObjectId> all_objects_up_to(std::size_t n) const;

  std::size_t carrier(ObjectId a) const override;
  bool is_morphism(const Morphism& m) const override;

  std::string object_name(ObjectId a) const override;
  std::optional<std::vector<Morphism>> hom(ObjectId x, ObjectId y, std::uint64_t budget) const override;
  std::optional<ObjectId> terminal() const override;
  Morphism to_terminal(ObjectId a) const override;
  std::optional<ProductWitness> product(ObjectId a, ObjectId b) const override;
  Morphism pair(const ProductWitness& w, const Morphism& f, const Morphism& g) const override;
  std::optional<PullbackWitness> pullback(const Morphism& f, const Morphism& k) const override;

 private:
  mutable CacheLock lock_;
  mutable std::deque<Arrow> arrows_;
  mutable std::map<Arrow, ObjectId> ids_;
};

}  // namespace doctrina

#endif
