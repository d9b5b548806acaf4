#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "invfo/formula.hpp"
#include "invfo/structure.hpp"
#include "testutil.hpp"

using namespace invfo;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;

TEST_CASE("parsing builds the expected tree") {
  SECTION("nested quantifiers over an atom") {
    auto f = parse_formula("forall x. exists y. E(x,y)");
    REQUIRE(f->kind == Kind::Forall);
    CHECK(f->name == "x");
    REQUIRE(f->lhs->kind == Kind::Exists);
    CHECK(f->lhs->name == "y");
    auto atom = f->lhs->lhs;
    REQUIRE(atom->kind == Kind::Atom);
    CHECK(atom->name == "E");
    CHECK(atom->vars == std::vector<std::string>{"x", "y"});
  }
  SECTION("equation") {
    auto f = parse_formula("x = y");
    REQUIRE(f->kind == Kind::Eq);
    CHECK(f->vars == std::vector<std::string>{"x", "y"});
  }
  SECTION("boolean constants") {
    CHECK(parse_formula("true")->kind == Kind::True);
    CHECK(parse_formula("false")->kind == Kind::False);
  }
}

TEST_CASE("operator precedence and associativity") {
  SECTION("and binds tighter than or") {
    auto f = parse_formula("P(x) & Q(x) | R(x)");
    REQUIRE(f->kind == Kind::Or);
    CHECK(f->lhs->kind == Kind::And);
    auto g = parse_formula("P(x) | Q(x) & R(x)");
    REQUIRE(g->kind == Kind::Or);
    CHECK(g->rhs->kind == Kind::And);
  }
  SECTION("implication is right-associative") {
    auto f = parse_formula("P(x) -> Q(x) -> R(x)");
    REQUIRE(f->kind == Kind::Implies);
    CHECK(f->lhs->kind == Kind::Atom);
    CHECK(f->rhs->kind == Kind::Implies);
  }
  SECTION("iff binds loosest") {
    auto f = parse_formula("P(x) <-> Q(x) -> R(x)");
    REQUIRE(f->kind == Kind::Iff);
    CHECK(f->rhs->kind == Kind::Implies);
  }
  SECTION("negation applies to one operand") {
    auto f = parse_formula("!P(x) & Q(x)");
    REQUIRE(f->kind == Kind::And);
    CHECK(f->lhs->kind == Kind::Not);
  }
  SECTION("a quantifier binds one unary operand") {
    auto f = parse_formula("forall x. P(x) & Q(x)");
    REQUIRE(f->kind == Kind::And);
    CHECK(f->lhs->kind == Kind::Forall);
  }
  SECTION("and-chains nest to the left") {
    auto f = parse_formula("P(x) & Q(x) & R(x)");
    REQUIRE(f->kind == Kind::And);
    CHECK(f->lhs->kind == Kind::And);
    CHECK(f->rhs->kind == Kind::Atom);
  }
}

TEST_CASE("printing inverts parsing on canonical text") {
  const std::vector<std::string> canonical = {
      "forall x. exists y. E(x,y)",
      "P(x) & Q(x) | R(x)",
      "(P(x) | Q(x)) & R(x)",
      "P(x) -> Q(x) -> R(x)",
      "(P(x) -> Q(x)) -> R(x)",
      "!(P(x) & Q(x))",
      "!P(x) & Q(x)",
      "forall x. (P(x) & Q(x))",
      "x = y & y = z",
      "exists x. (P(x) & forall y. leq(x,y))",
      "true | false",
      "E(x,y) <-> E(y,x)",
  };
  for (const auto& s : canonical) {
    INFO("text: " << s);
    CHECK(to_string(parse_formula(s)) == s);
  }
}

TEST_CASE("printing random formulas round-trips through the parser") {
  testutil::Rng rng(404);
  for (int i = 0; i < 200; ++i) {
    auto f = testutil::random_sentence(rng, {});
    std::string once = to_string(f);
    INFO("formula: " << once);
    CHECK(to_string(parse_formula(once)) == once);
  }
}

TEST_CASE("parse errors carry position information") {
  CHECK_THROWS_MATCHES(parse_formula("P(x) - Q(x)"), parse_error,
                       MessageMatches(ContainsSubstring("stray '-'")));
  CHECK_THROWS_MATCHES(parse_formula("P(x) < Q(x)"), parse_error,
                       MessageMatches(ContainsSubstring("stray '<'")));
  CHECK_THROWS_MATCHES(parse_formula("P(x) @"), parse_error,
                       MessageMatches(ContainsSubstring("unexpected character")));
  CHECK_THROWS_MATCHES(parse_formula("P(x"), parse_error,
                       MessageMatches(ContainsSubstring("')'")));
  CHECK_THROWS_MATCHES(parse_formula("forall x P(x)"), parse_error,
                       MessageMatches(ContainsSubstring("'.'")));
  CHECK_THROWS_MATCHES(parse_formula(""), parse_error,
                       MessageMatches(ContainsSubstring("expected a subformula")));
  CHECK_THROWS_MATCHES(parse_formula("P(x) Q(x)"), parse_error,
                       MessageMatches(ContainsSubstring("end of input")));
  CHECK_THROWS_MATCHES(parse_formula("x"), parse_error,
                       MessageMatches(ContainsSubstring("bare identifier")));
  CHECK_THROWS_AS(parse_formula("P()"), parse_error);
  CHECK_THROWS_AS(f_atom("P", {}), input_error);
}

TEST_CASE("free and bound variable queries") {
  CHECK(free_vars(parse_formula("forall x. E(x,y)")) == std::set<std::string>{"y"});
  // the second x is outside the quantifier's one-operand scope
  CHECK(free_vars(parse_formula("exists x. P(x) & Q(x)")) == std::set<std::string>{"x"});
  CHECK(free_vars(parse_formula("exists x. (P(x) & Q(x))")).empty());
  CHECK(free_vars(parse_formula("forall x. forall y. E(x,y)")).empty());
  CHECK(all_vars(parse_formula("forall x. E(x,y)")) == std::set<std::string>({"x", "y"}));
  CHECK(atom_names(parse_formula("E(x,y) & P(x) | x = y")) ==
        std::set<std::string>({"E", "P"}));
  CHECK(atom_names(parse_formula("x = y")).empty());
}

TEST_CASE("check_formula validates atoms against a vocabulary") {
  Vocabulary v;
  v.add("E", 2);
  v.add("P", 1);
  CHECK_NOTHROW(check_formula(v, parse_formula("forall x. exists y. (E(x,y) & P(x))")));
  CHECK_THROWS_MATCHES(check_formula(v, parse_formula("forall x. E(x)")), input_error,
                       MessageMatches(ContainsSubstring("arity")));
  CHECK_THROWS_MATCHES(check_formula(v, parse_formula("R(x,y)")), input_error,
                       MessageMatches(ContainsSubstring("unknown symbol")));
  // equations need no vocabulary entry
  CHECK_NOTHROW(check_formula(v, parse_formula("forall x. forall y. x = y")));
}

TEST_CASE("substitute_atom rewrites matching atoms") {
  SECTION("basic rewrite with argument renaming") {
    auto phi = parse_formula("succ(u,v)");
    auto def = parse_formula("E(x,y)");
    auto out = substitute_atom(phi, "succ", {"x", "y"}, def);
    CHECK(to_string(out) == "E(u,v)");
  }
  SECTION("formulas without the atom are unchanged") {
    auto phi = parse_formula("forall x. exists y. (E(x,y) & P(x))");
    auto out = substitute_atom(phi, "succ", {"x", "y"}, parse_formula("E(x,y)"));
    CHECK(to_string(out) == to_string(phi));
  }
  SECTION("bound variables of the definition are freshened, not captured") {
    // def quantifies over z; the call site passes z as an argument
    auto phi = parse_formula("forall z. succ(z,z)");
    auto def = parse_formula("exists z. (E(x,z) & E(z,y))");
    auto out = substitute_atom(phi, "succ", {"x", "y"}, def);
    auto again = parse_formula(to_string(out));
    // the inner quantifier must not shadow the outer z
    CHECK(free_vars(again).empty());
    CHECK(to_string(again) == to_string(out));
  }
  SECTION("definition with stray free variable is rejected") {
    CHECK_THROWS_MATCHES(
        substitute_atom(parse_formula("succ(u,v)"), "succ", {"x", "y"}, parse_formula("E(x,w)")),
        input_error, MessageMatches(ContainsSubstring("unexpected free variable")));
  }
  SECTION("atom arity must match the parameter list") {
    CHECK_THROWS_MATCHES(
        substitute_atom(parse_formula("succ(u,v,w)"), "succ", {"x", "y"},
                        parse_formula("E(x,y)")),
        input_error, MessageMatches(ContainsSubstring("arity")));
  }
}

// Semantic soundness: replacing succ(a,b) by def[a/x, b/y] must not change the
// truth value when succ is interpreted exactly as the set of pairs satisfying
// the definition.
TEST_CASE("substitute_atom preserves meaning on small structures") {
  testutil::Rng rng(505);
  const std::vector<std::string> defs = {
      "E(x,y)",
      "E(y,x) | x = y",
      "exists z. (E(x,z) & E(z,y))",
      "forall z. (E(x,z) -> E(y,z))",
  };
  int checked = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 12; ++trial) {
      Structure a = testutil::random_structure(rng, n);
      for (const auto& dtext : defs) {
        auto def = parse_formula(dtext);
        // interpret succ as the pairs defined by def over a
        std::set<std::pair<int, int>> pairs;
        for (int u : a.universe)
          for (int v : a.universe) {
            std::map<std::string, int> env{{"x", u}, {"y", v}};
            if (evaluate(a, def, env)) pairs.insert({u, v});
          }
        Structure b = with_binary_relation(a, "succ", pairs);
        testutil::FormulaGenOpts opts;
        opts.allow_succ = true;
        opts.max_depth = 3;
        auto phi = testutil::random_sentence(rng, opts);
        auto rewritten = substitute_atom(phi, "succ", {"x", "y"}, def);
        INFO("phi: " << to_string(phi) << "  def: " << dtext << "  n=" << n);
        CHECK(evaluate(b, phi, {}) == evaluate(a, rewritten, {}));
        ++checked;
      }
    }
  }
  CHECK(checked >= 100);
}
