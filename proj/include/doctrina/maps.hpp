#ifndef DOCTRINA_MAPS_HPP
#define DOCTRINA_MAPS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "doctrina/doctrine.hpp"

namespace doctrina {

/// A formula over Y x A together with the two functionality verdicts.
struct FunctionalRelation {
  ObjectId source = 0;
  ObjectId target = 0;
  Elem formula;
  bool single_valued = false;
  bool total = false;

  bool functional() const { return single_valued && total; }
  // Name of the first failed condition, empty when functional.
  std::string refusal() const;
};

FunctionalRelation is_functional(const Doctrine& d, ObjectId y, ObjectId a, const Elem& f);
// F^op = <pi2,pi1>* F, over A x Y.
Elem opposite(const Doctrine& d, ObjectId y, ObjectId a, const Elem& f);
// exists a. F(y,a) /\ G(a,c), over Y x C.
Elem compose_relations(const Doctrine& d, ObjectId y, ObjectId a, ObjectId c, const Elem& f, const Elem& g);
// (f x id)* delta_B, over A x B.
Elem graph_of(const Doctrine& d, const Morphism& f);
// L over Y x A is left adjoint to R over A x Y.
bool left_adjoint_check(const Doctrine& d, ObjectId y, ObjectId a, const Elem& l, const Elem& r);
// Some f: Y -> A with graph F, and how many there are.
std::pair<std::optional<Morphism>, std::size_t> morphisms_with_graph(const Doctrine& d, ObjectId y, ObjectId a,
                                                                     const Elem& f,
                                                                     std::uint64_t budget = kDefaultBudget);

// The inverse of F in Map (F^op when it is functional and both composites
// are identities).
std::optional<Elem> relation_inverse(const Doctrine& d, ObjectId y, ObjectId a, const Elem& f);

struct BijectivityVerdict {
  Morphism f;
  bool injective = false;
  bool surjective = false;
  bool bijective() const { return injective && surjective; }
};

BijectivityVerdict internal_bijectivity(const Doctrine& d, const Morphism& f);

struct CompletenessVerdict {
  bool complete = true;
  bool exhaustive = true;
  std::optional<FunctionalRelation> counterexample;
  std::size_t graphs_found = 0;  // morphisms with the counterexample's graph
  ValidationReport report;
};

// Every functional relation from each source to A is the graph of exactly
// one morphism.
CompletenessVerdict is_complete(const Doctrine& d, ObjectId a, const std::vector<ObjectId>& sources,
                                const LawScope& scope);

struct Span {
  Morphism d;  // X -> Y, internally bijective
  Morphism q;  // X -> A
};

struct SheafVerdict {
  bool existence = true;
  bool uniqueness = true;
  bool exhaustive = true;
  std::size_t spans = 0;
  std::optional<Span> counterexample;
  ValidationReport report;

  bool sheaf() const { return existence && uniqueness; }
};

// Spans (d, q) with d internally bijective between objects of `objects`.
std::vector<Span> bijective_spans(const Doctrine& d, ObjectId a, const std::vector<ObjectId>& objects,
                                  std::uint64_t budget = kDefaultBudget);
SheafVerdict is_sheaf(const Doctrine& d, ObjectId a, const std::vector<Span>& spans,
                      std::uint64_t budget = kDefaultBudget);

// The relation exists x. delta_A(q x, a) /\ delta_Y(d x, y), over Y x A.
Elem extension_relation(const Doctrine& d, const Morphism& dm, const Morphism& q);
// The unique h with graph equal to the extension relation; asserts h.d = q.
// Throws PreconditionFailed when A is not complete enough to provide h.
Morphism complete_extension(const Doctrine& d, ObjectId a, const Morphism& dm, const Morphism& q,
                            std::uint64_t budget = kDefaultBudget);

/// Functional relations between chosen objects, composed relationally.
class MapCategory {
 public:
  const std::vector<ObjectId>& objects() const { return objects_; }
  const std::vector<Elem>& hom(ObjectId y, ObjectId a) const { return homs_.at({y, a}); }
  Elem identity(ObjectId a) const;
  // G . F for F: Y -> A, G: A -> C.
  Elem compose(ObjectId y, ObjectId a, ObjectId c, const Elem& f, const Elem& g) const;
  // The inverse of F in Map, if F is an isomorphism there.
  std::optional<Elem> inverse(ObjectId y, ObjectId a, const Elem& f) const;
  // Whether F is in the image of the graph functor.
  bool is_graph(ObjectId y, ObjectId a, const Elem& f) const;
  const ValidationReport& report() const { return report_; }

 private:
  friend MapCategory build_map_category(const Doctrine&, const std::vector<ObjectId>&, const LawScope&,
                                        const std::vector<FunctionalRelation>&);
  const Doctrine* d_ = nullptr;
  std::vector<ObjectId> objects_;
  std::map<std::pair<ObjectId, ObjectId>, std::vector<Elem>> homs_;
  std::map<std::pair<ObjectId, ObjectId>, std::vector<Elem>> graphs_;
  ValidationReport report_;
};

// Homs are all functional relations when the fiber over Y x A enumerates
// within budget; otherwise graphs of base morphisms plus `extra`. Category
// laws and functoriality of the graph map are checked into report().
MapCategory build_map_category(const Doctrine& d, const std::vector<ObjectId>& objects, const LawScope& scope,
                               const std::vector<FunctionalRelation>& extra = {});

}  // namespace doctrina

#endif
