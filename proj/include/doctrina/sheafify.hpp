#ifndef DOCTRINA_SHEAFIFY_HPP
#define DOCTRINA_SHEAFIFY_HPP

#include <map>

#include "doctrina/maps.hpp"
#include "doctrina/powerobj.hpp"

namespace doctrina {

struct SheafificationResult {
  SingletonsReport singletons;
  PowerObjectWitness power;
  ObjectId a = 0;
  ObjectId s = 0;  // S_A
  Morphism incl;   // S_A -> PA
  Morphism eta;    // A -> S_A
  bool eta_bijective = false;
  bool membership_identity = false;  // delta_S(eta a, s) = a in incl(s)
  ValidationReport report;

  bool ok() const { return eta_bijective && membership_identity; }
};

// Throws PreconditionFailed ("singletons-precondition-failed") when the
// singletons conditions fail for A. Failures of the unit lemmas are recorded
// as theorem violations.
SheafificationResult sheafify_object(const Doctrine& d, ObjectId a, const std::vector<ObjectId>& probes,
                                     const LawScope& scope);

// The h: Y -> S_A with F(y,a) = delta_S(h y, eta a), obtained by factoring
// {F^op} through the image inclusion. Uniqueness is checked by hom scan.
Morphism tabulate_functional(const Doctrine& d, const SheafificationResult& sa, ObjectId y, const Elem& f,
                             ValidationReport& incidents, std::uint64_t budget = kDefaultBudget);

// xi(y,a) = exists x. delta_Y(y, d x) /\ delta_S(q x, eta a), over Y x A.
Elem xi_relation(const Doctrine& d, const SheafificationResult& sa, const Morphism& dm, const Morphism& q);
// The same relation through the internal language.
Elem xi_relation_text(const Doctrine& d, const SheafificationResult& sa, const Morphism& dm, const Morphism& q);

// The unique h: Y -> S_A with h.d = q for internally bijective d: X -> Y.
Morphism extend_along_bijective(const Doctrine& d, const SheafificationResult& sa, const Morphism& dm,
                                const Morphism& q, ValidationReport& incidents,
                                std::uint64_t budget = kDefaultBudget);

struct ReflectionData {
  std::map<ObjectId, SheafificationResult> units;
  std::map<ObjectId, bool> sheaves;  // verdicts on the objects and their S_A
  ValidationReport report;

  // S_f: S_A -> S_B, the extension of eta_B . f along eta_A.
  Morphism reflect(const Doctrine& d, const Morphism& f, std::uint64_t budget = kDefaultBudget) const;
};

// Units for every object; the universal property of each unit against the
// sheaves found among the objects; unit naturality on morphisms among them;
// sheafhood of every S_A.
ReflectionData reflector(const Doctrine& d, const std::vector<ObjectId>& objects, const LawScope& scope);

// (a) every sheaf among the probes is complete, via tabulation and the
// inverse of its unit; (b) every probe is Map-isomorphic to its complete
// S_A through the graph of the unit.
ValidationReport check_equivalences(const Doctrine& d, const ReflectionData& refl,
                                    const std::vector<ObjectId>& probes, const LawScope& scope);

}  // namespace doctrina

#endif
