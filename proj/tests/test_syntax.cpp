#include <doctest.h>

#include "generators.hpp"
#include "wgcl/parser.hpp"

using namespace wgcl;
using namespace wgcl::testing;

namespace {

ProgramPtr parse(const std::string& body, const Algebra& alg = Algebra::tropical()) {
  return parse_program(body, alg).program;
}

std::int64_t arith(const std::string& text, const State& s = {}) {
  return eval_arith(*parse_arith(text), s);
}

}  // namespace

TEST_CASE("pragma selects the instance") {
  auto p = parse_program("@instance omegalang:ab\nweigh a");
  CHECK(p.algebra == Algebra::omega_lang("ab"));
  auto q = parse_program("@instance counting\nskip", Algebra::tropical());
  CHECK(q.algebra == Algebra::tropical());
  CHECK_THROWS_AS(parse_program("skip"), ParseError);
  CHECK_THROWS_AS(parse_program("@instance reals\nskip"), ParseError);
}

TEST_CASE("arithmetic") {
  State s{{"x", 3}, {"y", -2}};
  CHECK(arith("2 + 3 * 4") == 14);
  CHECK(arith("(2 + 3) * 4") == 20);
  CHECK(arith("x - y - 1", s) == 4);
  CHECK(arith("-x + 1", s) == -2);
  CHECK(arith("min(x, y) + max(x, 7)", s) == 5);
  CHECK(arith("fib(10)") == 55);
  CHECK(arith("unset") == 0);
  CHECK_THROWS_AS(arith("9223372036854775807 + 1"), EvalError);
  CHECK_THROWS_AS(arith("fib(200)"), EvalError);
  CHECK(fib(-3) == 0);
  CHECK(fib(92) == 7540113804746346429);
}

TEST_CASE("guards: not binds tighter than and, and tighter than or") {
  State s{{"x", 1}};
  CHECK(eval_bool(*parse_bool("not x = 1 or x = 1 and false"), s) == false);
  CHECK(eval_bool(*parse_bool("true or false and false"), s));
  CHECK(eval_bool(*parse_bool("!(x != 1) && x >= 1"), s));
  CHECK(eval_bool(*parse_bool("¬(x ≥ 2) ∧ x ≤ 1"), s));
  CHECK(eval_bool(*parse_bool("x == 1 || x < 0"), s));
}

TEST_CASE("statements and sugar") {
  auto alg = Algebra::tropical();
  auto p = parse("x := 1; if (x > 0) {weigh 1} else if (x < 0) {weigh 2}", alg);
  REQUIRE(p->kind == Program::Kind::seq);
  CHECK(p->second->kind == Program::Kind::ite);
  CHECK(p->second->second->kind == Program::Kind::ite);

  CHECK(equal(parse("{}", alg), make_skip(alg)));
  CHECK(equal(parse("if (x > 0) {skip}", alg),
              parse("if (x > 0) {skip} else {skip}", alg)));
  CHECK(equal(parse("{skip} [] {weigh 1} [] {weigh 2}", alg),
              parse("{skip} [] {{weigh 1} [] {weigh 2}}", alg)));
  CHECK(equal(parse("{x := 1} [2] (+) [3] {x := 2}", alg),
              parse("{weigh 2; x := 1} [] {weigh 3; x := 2}", alg)));
}

TEST_CASE("word powers") {
  auto alg = Algebra::lang("ab");
  CHECK(equal(parse("weigh a^3", alg), parse("weigh aaa", alg)));
  CHECK(equal(parse("weigh ab^2", alg), parse("weigh abab", alg)));
  auto p = parse("weigh b^n", alg);
  auto s = to_string(*p, alg);
  CHECK(s.find("while") != std::string::npos);
  CHECK(s.find("_") != std::string::npos);
}

TEST_CASE("comments, unicode and subscripted names") {
  auto alg = Algebra::omega_lang("ab");
  auto p = parse("// leading comment\nℓ[i] := 2; // trailing\nweigh a", alg);
  REQUIRE(p->kind == Program::Kind::seq);
  CHECK(p->first->var == "ℓ[i]");
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_program("@instance tropical\nx := 1;\nwhile (x > ) {skip}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 12);
  }
  CHECK_THROWS_AS(parse("weigh a"), ParseError);
  CHECK_THROWS_AS(parse("weigh c", Algebra::lang("ab")), ParseError);
  CHECK_THROWS_AS(parse("x := "), ParseError);
  CHECK_THROWS_AS(parse("x := 1 $"), ParseError);
}

TEST_CASE("weightings") {
  auto trop = Algebra::tropical();
  auto f = parse_weighting("[n=0] 0 (+) [n>0] (1 (*) int(n) (+) int(y))", trop);
  CHECK(eval_weighting(*f, State{{"n", 0}, {"y", 3}}, trop) == ModuleValue(ExtNat(0)));
  CHECK(eval_weighting(*f, State{{"n", 4}, {"y", 3}}, trop) == ModuleValue(ExtNat(3)));
  CHECK(eval_weighting(*f, State{{"n", 1}, {"y", 3}}, trop) == ModuleValue(ExtNat(2)));
  CHECK(eval_weighting(*parse_weighting("zero", trop), {}, trop) == trop.mod_zero());
  CHECK(eval_weighting(*parse_weighting("top", trop), {}, trop) == trop.top());
  CHECK(eval_weighting(*parse_weighting("inf", trop), {}, trop) ==
        ModuleValue(ExtNat::infinity()));
  CHECK_THROWS_AS(eval_weighting(*parse_weighting("int(x)", trop), State{{"x", -1}}, trop),
                  EvalError);

  auto arc = Algebra::arctic();
  CHECK(eval_weighting(*parse_weighting("-inf", arc), {}, arc) ==
        ModuleValue(Arctic::negative_infinity()));
  CHECK(eval_weighting(*parse_weighting("2*(x-1)+y", arc), State{{"x", 3}, {"y", 2}}, arc) ==
        ModuleValue(Arctic(6)));

  auto prob = Algebra::probability();
  CHECK(eval_weighting(*parse_weighting("1/3 (*) 3/2 (+) 0.25", prob), {}, prob) ==
        ModuleValue(ExtRational(Rational(3, 4))));
  CHECK(eval_weighting(*parse_weighting("0.05 (+) 010/08", prob), {}, prob) ==
        ModuleValue(ExtRational(Rational(13, 10))));

  auto om = Algebra::omega_lang("ab");
  auto lit = eval_weighting(*parse_weighting("{a, b(a)^ω, bΣ^∞, ε}", om), {}, om);
  CHECK(om.format(lit) == "{ε,a,bΣ^∞}");
  CHECK_THROWS_AS(parse_weighting("top", Algebra::lang("ab")), ParseError);
  CHECK_THROWS_AS(parse_weighting("{(a)^ω}", Algebra::lang("ab")), ParseError);
}

TEST_CASE("states and grids") {
  CHECK(parse_state("x=2, y=-3") == State{{"x", 2}, {"y", -3}});
  CHECK(parse_state("") == State());
  CHECK(parse_state("x=0").empty());
  CHECK_THROWS_AS(parse_state("x=1,x=2"), ParseError);
  CHECK_THROWS_AS(parse_state("x"), ParseError);

  auto g = parse_grid("y=0..1,n=2..3", 100);
  CHECK(g.vars == std::vector<std::string>{"n", "y"});
  REQUIRE(g.states.size() == 4);
  CHECK(g.states[0] == State{{"n", 2}});
  CHECK(g.states[1] == State{{"n", 2}, {"y", 1}});
  CHECK(g.states[3] == State{{"n", 3}, {"y", 1}});
  CHECK_THROWS_AS(parse_grid("x=0..9,y=0..9", 99), Error);
  CHECK_THROWS_AS(parse_grid("x=3..1", 10), ParseError);
  CHECK(State{{"x", 1}}.to_string() == "{x:1}");
}

TEST_CASE("printing round-trips random programs") {
  Rng rng(11);
  for (const auto& alg : all_instances()) {
    CAPTURE(alg.name());
    ProgramGen gen{alg};
    for (int i = 0; i < 60; ++i) {
      ProgramPtr p = i % 3 == 0 ? gen.looping(rng) : gen.loop_free(rng, 4);
      std::string text = to_string(*p, alg);
      CAPTURE(text);
      CHECK(equal(parse_program(text, alg).program, p));
    }
  }
}

TEST_CASE("printing keeps structure that precedence would lose") {
  auto alg = Algebra::tropical();
  for (const char* text : {"{x := 1; x := 2}; x := 3", "x := -(3)", "x := 1 - (2 - 3)",
                           "x := (1 + 2) * 3", "while (not (x > 0 and y > 0)) {skip}"}) {
    auto p = parse(text, alg);
    CHECK(equal(parse(to_string(*p, alg), alg), p));
  }
}
