#ifndef DOCTRINA_INTLANG_HPP
#define DOCTRINA_INTLANG_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "doctrina/doctrine.hpp"

namespace doctrina {

/// Sorts, function symbols and relation symbols over a doctrine. Multi-argument
/// symbols take their arguments as a left-associated product of the argument
/// sorts; a 0-ary function symbol is a morphism out of the terminal object.
struct Signature {
  struct Function {
    std::vector<ObjectId> args;
    ObjectId result = 0;
    Morphism morphism;
  };
  struct Relation {
    std::vector<ObjectId> args;
    Elem formula;
  };

  std::map<std::string, ObjectId> sorts;
  std::map<std::string, Function> functions;
  std::map<std::string, Relation> relations;

  // Registers a sort under the base category's object name.
  void add_sort(const Category& c, ObjectId a) { sorts[c.object_name(a)] = a; }
  void add_sort(const std::string& name, ObjectId a) { sorts[name] = a; }
  // Unary symbol f: A -> B.
  void add_function(const std::string& name, const Morphism& f) { functions[name] = {{f.dom}, f.cod, f}; }
  void add_relation(const std::string& name, std::vector<ObjectId> args, Elem formula) {
    relations[name] = {std::move(args), std::move(formula)};
  }
};

struct Term {
  enum class Kind { variable, apply };
  Kind kind = Kind::variable;
  std::string name;
  std::vector<Term> args;
  std::size_t pos = 0;

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.name == b.name && a.args == b.args;
  }
};

struct RegularFormula {
  enum class Kind { top, conj, equal, relation, exists };
  Kind kind = Kind::top;
  std::string name;                       // relation symbol or bound variable
  std::string sort;                       // sort of the bound variable
  std::vector<Term> terms;                // equal: two terms; relation: arguments
  std::vector<RegularFormula> children;   // conj: two; exists: one
  std::size_t pos = 0;

  // Structural equality; source positions are ignored.
  friend bool operator==(const RegularFormula& a, const RegularFormula& b) {
    return a.kind == b.kind && a.name == b.name && a.sort == b.sort && a.terms == b.terms &&
           a.children == b.children;
  }
};

std::string to_string(const Term& t);
std::string to_string(const RegularFormula& f);

/// Variables with sorts, realized as the left-associated product of the
/// sorts (terminal when empty, the sort itself for one variable).
class TypingContext {
 public:
  TypingContext(const Category& c, std::vector<std::pair<std::string, ObjectId>> vars);

  const std::vector<std::pair<std::string, ObjectId>>& vars() const { return vars_; }
  ObjectId object() const { return object_; }
  // Projection onto the i-th variable.
  const Morphism& projection(std::size_t i) const { return projections_.at(i); }
  std::optional<std::size_t> find(const std::string& v) const;
  // This context plus one variable, and the projection dropping it.
  std::pair<TypingContext, Morphism> extend(const std::string& v, ObjectId sort) const;

 private:
  const Category* c_;
  std::vector<std::pair<std::string, ObjectId>> vars_;
  ObjectId object_ = 0;
  std::vector<Morphism> projections_;
};

// Grammar in docs/grammar.ebnf. Unknown symbols and arity mismatches are
// reported here; sort mismatches are reported by evaluate.
RegularFormula parse_formula(const std::string& src, const Signature& sig);
// "y:Y, a:A"; sorts resolved through the signature.
TypingContext parse_context(const std::string& src, const Signature& sig, const Category& c);

Morphism evaluate_term(const Doctrine& d, const Signature& sig, const TypingContext& ctx, const Term& t);
Elem evaluate(const Doctrine& d, const Signature& sig, const TypingContext& ctx, const RegularFormula& f);
bool entails(const Doctrine& d, const Signature& sig, const TypingContext& ctx, const RegularFormula& phi,
             const RegularFormula& psi);

}  // namespace doctrina

#endif
