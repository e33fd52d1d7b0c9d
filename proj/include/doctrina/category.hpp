#ifndef DOCTRINA_CATEGORY_HPP
#define DOCTRINA_CATEGORY_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace doctrina {

using ObjectId = std::uint32_t;

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

/// A morphism as a value. For table-backed categories `map` holds the single
/// morphism id; for concrete categories it is the underlying function on
/// carriers. Ordering on `map` is the canonical "lowest key" order.
struct Morphism {
  ObjectId dom = 0;
  ObjectId cod = 0;
  std::vector<std::uint32_t> map;

  friend auto operator<=>(const Morphism&, const Morphism&) = default;
  friend bool operator==(const Morphism&, const Morphism&) = default;
};

struct ProductWitness {
  ObjectId left = 0;
  ObjectId right = 0;
  ObjectId object = 0;
  Morphism p1;
  Morphism p2;
};

// Square  top: apex -> f.dom,  left: apex -> k.dom,  f . top = k . left.
struct PullbackWitness {
  Morphism f;
  Morphism k;
  ObjectId apex = 0;
  Morphism top;
  Morphism left;
};

/// Base category of a doctrine, with chosen finite-product structure.
///
/// Implementations either hold explicit tables (FiniteCategory) or compute
/// with underlying functions (ConcreteCategory and its subclasses). Objects
/// created on demand (products, pullback apexes) are interned, so object ids
/// stay stable for the lifetime of the category.
class Category {
 public:
  virtual ~Category() = default;

  virtual std::string object_name(ObjectId a) const = 0;
  virtual std::string morphism_name(const Morphism& m) const = 0;

  virtual Morphism identity(ObjectId a) const = 0;
  // g . f
  virtual Morphism compose(const Morphism& g, const Morphism& f) const = 0;
  virtual bool equal(const Morphism& a, const Morphism& b) const { return a == b; }
  // Representative used as a key; equal(a,b) iff canonical(a) == canonical(b).
  virtual Morphism canonical(const Morphism& m) const { return m; }

  // Canonical representatives of hom(x, y) in increasing key order, or
  // nullopt if there are more than `budget` of them.
  virtual std::optional<std::vector<Morphism>> hom(ObjectId x, ObjectId y,
                                                   std::uint64_t budget = kDefaultBudget) const = 0;

  virtual std::optional<ObjectId> terminal() const = 0;
  virtual Morphism to_terminal(ObjectId a) const = 0;
  virtual std::optional<ProductWitness> product(ObjectId a, ObjectId b) const = 0;
  // The mediator <f,g> for a chosen product; throws WitnessFailure if the
  // witness does not provide exactly one.
  virtual Morphism pair(const ProductWitness& w, const Morphism& f, const Morphism& g) const = 0;
  virtual std::optional<PullbackWitness> pullback(const Morphism& f, const Morphism& k) const = 0;

  // Some h with m . h = g, by scanning hom(g.dom, m.dom) unless overridden.
  virtual std::optional<Morphism> factor_through(const Morphism& m, const Morphism& g,
                                                 std::uint64_t budget = kDefaultBudget) const;
};

// Helpers over chosen products. All throw PreconditionFailed when a needed
// product is absent.
ProductWitness require_product(const Category& c, ObjectId a, ObjectId b);
ObjectId require_terminal(const Category& c);
Morphism diagonal(const Category& c, ObjectId a);
// f x g : dom f * dom g -> cod f * cod g
Morphism cross(const Category& c, const Morphism& f, const Morphism& g);
// <p2,p1> : a*b -> b*a
Morphism swap(const Category& c, ObjectId a, ObjectId b);
Morphism pair(const Category& c, const Morphism& f, const Morphism& g);

// Checks the product universal property against every probe X by comparing
// hom(X, P) with hom(X, L) x hom(X, R). Returns a description of the first
// failure, or nullopt when the witness is universal on the probes.
std::optional<std::string> check_product_witness(const Category& c, const ProductWitness& w,
                                                 const std::vector<ObjectId>& probes,
                                                 std::uint64_t budget = kDefaultBudget);
std::optional<std::string> check_pullback_witness(const Category& c, const PullbackWitness& w,
                                                  const std::vector<ObjectId>& probes,
                                                  std::uint64_t budget = kDefaultBudget);

// Left-cancellable against all parallel pairs out of the probes.
std::optional<bool> is_mono(const Category& c, const Morphism& m, const std::vector<ObjectId>& probes,
                            std::uint64_t budget = kDefaultBudget);
// Right-cancellable against all parallel pairs into the probes.
std::optional<bool> is_epi(const Category& c, const Morphism& m, const std::vector<ObjectId>& probes,
                           std::uint64_t budget = kDefaultBudget);
// Some two-sided inverse among hom(cod, dom).
std::optional<Morphism> find_inverse(const Category& c, const Morphism& m,
                                     std::uint64_t budget = kDefaultBudget);

}  // namespace doctrina

#endif
