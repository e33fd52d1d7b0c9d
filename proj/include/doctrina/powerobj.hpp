#ifndef DOCTRINA_POWEROBJ_HPP
#define DOCTRINA_POWEROBJ_HPP

#include <optional>

#include "doctrina/doctrine.hpp"
#include "doctrina/maps.hpp"

namespace doctrina {

// (id_X x g)* mem, over X x Y.
Elem transpose_back(const Doctrine& d, const PowerObjectWitness& w, const Morphism& g);

// The unique g: Y -> PX with gamma = (id x g)* mem. Scans hom(Y, PX) when it
// fits the budget (cross-checking a declared transpose), otherwise uses the
// declared transpose and verifies the equation. Throws WitnessFailure with
// "no solution" or "multiple solutions".
Morphism lambda(const Doctrine& d, const PowerObjectWitness& w, ObjectId y, const Elem& gamma,
                std::uint64_t budget = kDefaultBudget);

// For each probe Y: every gamma over X x Y has exactly one solution, and
// lambda((id x f)* mem) = f for every f: Y -> PX.
ValidationReport verify_power_object(const Doctrine& d, const PowerObjectWitness& w,
                                     const std::vector<ObjectId>& probes, const LawScope& scope);

struct SingletonsReport {
  ObjectId a = 0;
  ObjectId pa = 0;
  Morphism singleton;  // {delta_A}: A -> PA
  Elem sigma;          // exists along {delta_A} of top, over PA
  std::optional<ComprehensionWitness> image;
  ObjectId s = 0;      // S_A
  Morphism eta;        // A -> S_A
  bool power_object = false;
  bool injective = false;
  bool has_image = false;
  bool condition_iii = false;
  bool exhaustive = true;
  ValidationReport report;

  bool ok() const { return power_object && injective && has_image && condition_iii; }
};

// Conditions (i)-(iii) for A; (iii) quantifies over g: Y -> PA for Y in the
// probes (sampled when hom(Y, PA) exceeds the budget).
SingletonsReport check_singletons(const Doctrine& d, ObjectId a, const std::vector<ObjectId>& probes,
                                  const LawScope& scope);

}  // namespace doctrina

#endif
