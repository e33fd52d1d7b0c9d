#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "doctrina/error.hpp"
#include "doctrina/intlang.hpp"
#include "doctrina/valuation.hpp"

using namespace doctrina;

namespace {

struct Setup {
  LocalicDoctrine d{FiniteHeytingAlgebra::chain(2)};
  Signature sig;
  ObjectId two = d.object(2);
  ObjectId three = d.object(3);
  Morphism f{three, two, {0, 1, 1}};
  Value t = d.top(d.object(1))[0];
  Value b = d.bottom(d.object(1))[0];

  Setup() {
    sig.add_sort("S", two);
    sig.add_sort("R", three);
    sig.add_function("f", f);
    // P(r) holds at 0 and 2.
    sig.add_relation("P", {three}, {t, b, t});
  }

  Elem eval(const std::string& ctx, const std::string& phi) {
    auto c = parse_context(ctx, sig, d.base());
    return evaluate(d, sig, c, parse_formula(phi, sig));
  }
};

}  // namespace

TEST_CASE("equation against a function symbol is its graph") {
  Setup s;
  // Row-major over R x S.
  Elem expected;
  for (std::uint32_t i = 0; i < 3; ++i)
    for (std::uint32_t j = 0; j < 2; ++j) expected.push_back(s.f.map[i] == j ? s.t : s.b);
  CHECK(s.eval("r:R, y:S", "f(r) = y") == expected);
}

TEST_CASE("existential image of a relation") {
  Setup s;
  // f(0) = 0 and f(2) = 1, so the image of P is everything.
  CHECK(s.eval("y:S", "E r:R. P(r) & f(r) = y") == Elem{s.t, s.t});
  CHECK(s.eval("r:R", "P(r) & f(r) = f(r)") == Elem{s.t, s.b, s.t});
  CHECK(s.eval("x:S", "E y:S. x = y") == Elem{s.t, s.t});
  CHECK(s.eval("", "E r:R. P(r)") == Elem{s.t});
}

TEST_CASE("entailment") {
  Setup s;
  auto c = parse_context("x:S, y:S", s.sig, s.d.base());
  CHECK(entails(s.d, s.sig, c, parse_formula("x = y", s.sig), parse_formula("E z:S. x = z", s.sig)));
  CHECK_FALSE(entails(s.d, s.sig, c, parse_formula("T", s.sig), parse_formula("x = y", s.sig)));
}

TEST_CASE("printing round-trips through the parser") {
  Setup s;
  auto phi = parse_formula("E r:R. (P(r) & f(r) = y)", s.sig);
  CHECK(parse_formula(to_string(phi), s.sig) == phi);
}

TEST_CASE("malformed formulas are rejected") {
  Setup s;
  CHECK_THROWS(parse_formula("Q(x)", s.sig));
  CHECK_THROWS(parse_formula("P(x, y)", s.sig));
  CHECK_THROWS(parse_formula("E r:R P(r)", s.sig));
  // Sorts only clash at evaluation.
  auto c = parse_context("x:S", s.sig, s.d.base());
  CHECK_THROWS(evaluate(s.d, s.sig, c, parse_formula("P(x)", s.sig)));
}
