#ifndef DOCTRINA_FINCAT_HPP
#define DOCTRINA_FINCAT_HPP

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "doctrina/category.hpp"
#include "doctrina/report.hpp"

namespace doctrina {

using MorphismId = std::uint32_t;

// Mutex that lets the owning class stay copyable; copies get a fresh lock.
struct CacheLock {
  std::mutex mutex;
  CacheLock() = default;
  CacheLock(const CacheLock&) {}
  CacheLock& operator=(const CacheLock&) { return *this; }
};

/// A finite category given by explicit composition tables.
///
/// Morphism values carry their id as the single entry of `map`. Chosen
/// products and pullbacks come from declarations; when none is declared the
/// universal-property search runs once and its (lowest-key) result is cached.
class FiniteCategory : public Category {
 public:
  struct MorphismInfo {
    std::string name;
    ObjectId dom;
    ObjectId cod;
  };

  ObjectId add_object(std::string name);
  MorphismId add_morphism(std::string name, ObjectId dom, ObjectId cod);
  void set_identity(ObjectId a, MorphismId m);
  void set_composite(MorphismId g, MorphismId f, MorphismId gf);
  void set_terminal(ObjectId t) { terminal_ = t; }
  void declare_product(const ProductWitness& w);
  void declare_pullback(const PullbackWitness& w);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  const MorphismInfo& info(MorphismId m) const { return morphisms_.at(m); }
  std::optional<ObjectId> find_object(const std::string& name) const;
  std::optional<MorphismId> find_morphism(const std::string& name) const;
  std::optional<MorphismId> identity_id(ObjectId a) const;
  // Entry of the composition table; nullopt if undeclared.
  std::optional<MorphismId> composite(MorphismId g, MorphismId f) const;
  const std::vector<MorphismId>& hom_ids(ObjectId x, ObjectId y) const;
  Morphism mor(MorphismId m) const;
  static MorphismId id_of(const Morphism& m) { return m.map.at(0); }

  const std::vector<ProductWitness>& declared_products() const { return products_; }
  const std::vector<PullbackWitness>& declared_pullbacks() const { return pullbacks_; }
  std::optional<ObjectId> declared_terminal() const { return terminal_; }

  std::string object_name(ObjectId a) const override { return objects_.at(a); }
  std::string morphism_name(const Morphism& m) const override { return morphisms_.at(id_of(m)).name; }
  Morphism identity(ObjectId a) const override;
  Morphism compose(const Morphism& g, const Morphism& f) const override;
  std::optional<std::vector<Morphism>> hom(ObjectId x, ObjectId y, std::uint64_t budget) const override;
  std::optional<ObjectId> terminal() const override;
  Morphism to_terminal(ObjectId a) const override;
  std::optional<ProductWitness> product(ObjectId a, ObjectId b) const override;
  Morphism pair(const ProductWitness& w, const Morphism& f, const Morphism& g) const override;
  std::optional<PullbackWitness> pullback(const Morphism& f, const Morphism& k) const override;

 private:
  void ensure_homs() const;

  std::vector<std::string> objects_;
  std::vector<MorphismInfo> morphisms_;
  std::vector<std::optional<MorphismId>> identities_;
  std::unordered_map<std::uint64_t, MorphismId> compose_;
  std::optional<ObjectId> terminal_;
  std::vector<ProductWitness> products_;
  std::vector<PullbackWitness> pullbacks_;
  std::map<std::pair<MorphismId, MorphismId>, std::size_t> pullback_index_;

  mutable CacheLock cache_lock_;
  mutable std::vector<std::vector<MorphismId>> homs_;
  mutable std::map<std::pair<ObjectId, ObjectId>, std::optional<ProductWitness>> product_cache_;
  mutable std::map<std::pair<MorphismId, MorphismId>, std::optional<PullbackWitness>> pullback_cache_;
};

// Unit and associativity laws, plus (with `witnesses`) the universal
// properties of the declared terminal, products and pullbacks. Throws
// MalformedInput when an identity or composite is missing.
ValidationReport validate_category(const FiniteCategory& c, bool witnesses = true);

// Universal-property searches. Candidates are tried lowest object id first,
// then lowest morphism ids, so the result is the canonical witness.
std::optional<ObjectId> search_terminal(const FiniteCategory& c);
std::optional<ProductWitness> search_product(const FiniteCategory& c, ObjectId a, ObjectId b);
std::optional<PullbackWitness> search_pullback(const FiniteCategory& c, const Morphism& f, const Morphism& k,
                                               std::uint64_t budget = kDefaultBudget);

// Copies the full subcategory of `src` on `objects` into tables, keeping the
// chosen products, terminal and pullbacks whose apexes lie inside `objects`.
struct TabulatedCategory {
  FiniteCategory table;
  std::vector<ObjectId> objects;              // source object of table object i
  std::map<Morphism, MorphismId> morphism_ids;  // keyed by canonical source morphism
};

TabulatedCategory tabulate_category(const Category& src, const std::vector<ObjectId>& objects,
                                    std::uint64_t budget = kDefaultBudget);

}  // namespace doctrina

#endif
