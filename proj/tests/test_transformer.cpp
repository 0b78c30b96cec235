#include <doctest.h>

#include "generators.hpp"
#include "wgcl/parser.hpp"

using namespace wgcl;
using namespace wgcl::testing;

namespace {

ProgramPtr parse(const std::string& body, const Algebra& alg) {
  return parse_program(body, alg).program;
}

WeightingPtr weighting(const std::string& text, const Algebra& alg) {
  return make_weighting(alg, parse_weighting(text, alg));
}

ModuleValue words(std::initializer_list<Word> finite, std::initializer_list<Word> periods = {}) {
  OmegaLanguage::Lassos lassos;
  for (const auto& p : periods) lassos.insert(Lasso::canonical("", p));
  return OmegaLanguage("ab", OmegaLanguage::Words(finite), lassos, {});
}

/// Probabilistic programs: weighted choices with complementary weights.
ProgramPtr random_probabilistic(Rng& rng, const Algebra& alg, int depth) {
  auto x = arith_var("x");
  auto assign = [&] { return make_assign("x", arith_const(uniform(rng, 0, 2))); };
  if (depth <= 0) return coin(rng, 30) ? make_skip(alg) : assign();
  switch (uniform(rng, 0, 3)) {
    case 0:
      return make_seq(random_probabilistic(rng, alg, depth - 1),
                      random_probabilistic(rng, alg, depth - 1));
    case 1: {
      Rational p = random_fraction(rng);
      auto left = make_seq(make_weigh(weight_literal(Probability(p))),
                           random_probabilistic(rng, alg, depth - 1));
      auto right = make_seq(make_weigh(weight_literal(Probability(1 - p))),
                            random_probabilistic(rng, alg, depth - 1));
      return make_branch(left, right);
    }
    case 2:
      return make_while(bool_compare(CmpOp::eq, x, arith_const(uniform(rng, 0, 2))),
                        random_probabilistic(rng, alg, depth - 1));
    default:
      return assign();
  }
}

}  // namespace

TEST_CASE("loop-free tropical program") {
  auto alg = Algebra::tropical();
  auto p = parse("if (x > 0) {weigh 1; weigh 1} else {{weigh 2} [] {weigh 3}}", alg);
  for (int x = -2; x <= 2; ++x) {
    auto r = wp_eval(p, *constant_weighting(alg.mod_one()), State{{"x", x}}, alg);
    CHECK(r.value == ModuleValue(ExtNat(2)));
    CHECK(r.exact);
    CHECK(r.certificate == "loop-free");
  }
}

TEST_CASE("wp and wlp differ on a loop with a diverging path") {
  auto alg = Algebra::tropical();
  auto p = parse("while (x = 2) {{x := 3; weigh 5} [] {skip}}", alg);
  auto zero = weighting("int(0)", alg);
  const State s{{"x", 2}};
  auto wp = wp_eval(p, *zero, s, alg);
  CHECK(wp.value == ModuleValue(ExtNat(5)));
  CHECK(wp.exact);
  CHECK(wp.certificate == "fixed point");

  EvalOptions chain, lasso;
  chain.strategy = WlpStrategy::chain;
  lasso.strategy = WlpStrategy::lasso;
  auto by_chain = wlp_eval(p, *zero, s, alg, chain);
  auto by_lasso = wlp_eval(p, *zero, s, alg, lasso);
  CHECK(by_chain.value == ModuleValue(ExtNat(0)));
  CHECK(by_chain.exact);
  CHECK(by_lasso.value == by_chain.value);
  CHECK(by_lasso.certificate == "lasso decomposition");

  auto outside = wp_eval(p, *zero, State{{"x", 1}}, alg);
  CHECK(outside.value == ModuleValue(ExtNat(0)));
  CHECK(outside.iterations == 0);
}

TEST_CASE("language-valued loop") {
  auto alg = Algebra::omega_lang("ab");
  auto p = parse("while (x = 1) {{x := 0; weigh a} [] {weigh b}}", alg);
  const State s{{"x", 1}};
  EvalOptions ten;
  ten.fuel = 10;
  auto wp = wp_eval(p, *constant_weighting(alg.mod_one()), s, alg, ten);
  CHECK(wp.value == words({"a", "ba", "bba", "bbba", "bbbba", "bbbbba", "bbbbbba",
                           "bbbbbbba", "bbbbbbbba", "bbbbbbbbba"}));
  CHECK_FALSE(wp.exact);
  CHECK(wp.iterations == 10);

  auto div = wlp_eval(p, *constant_weighting(alg.mod_zero()), s, alg, ten);
  CHECK(div.value == words({}, {"b"}));
  CHECK(div.exact);
  CHECK(div.certificate == "lasso decomposition");

  // The chain alone never reaches {b^ω}.
  ten.strategy = WlpStrategy::chain;
  auto chain = wlp_eval(p, *constant_weighting(alg.mod_zero()), s, alg, ten);
  CHECK_FALSE(chain.exact);
  CHECK(alg.nat_leq(div.value, chain.value));
}

TEST_CASE("endless loops weigh their infinite words") {
  auto alg = Algebra::omega_lang("ab");
  auto zero = constant_weighting(alg.mod_zero());
  auto a = parse("while (true) {weigh a}", alg);
  auto b = parse("while (true) {weigh b}", alg);
  CHECK(wp_eval(a, *constant_weighting(alg.mod_one()), {}, alg).value == alg.mod_zero());
  CHECK(wp_eval(a, *constant_weighting(alg.mod_one()), {}, alg).exact);
  auto wa = wlp_eval(a, *zero, {}, alg), wb = wlp_eval(b, *zero, {}, alg);
  CHECK(wa.value == words({}, {"a"}));
  CHECK(wb.value == words({}, {"b"}));
  CHECK(wa.exact);
  CHECK(wb.exact);
}

TEST_CASE("iterates that outgrow the size limit stop as bounds") {
  auto alg = Algebra::omega_lang("ab");
  auto p = parse("while (true) {{weigh a} [] {weigh b}}", alg);
  EvalOptions o;
  o.max_value_size = 64;
  auto r = wlp_eval(p, *constant_weighting(alg.mod_zero()), {}, alg, o);
  CHECK_FALSE(r.exact);
  CHECK(r.iterations < o.fuel);
  CHECK(alg.nat_leq(words({}, {"a", "b", "ab"}), r.value));
}

TEST_CASE("instances without top reject wlp") {
  auto alg = Algebra::lang("ab");
  auto p = parse("weigh a", alg);
  CHECK_THROWS_AS(wlp_eval(p, *constant_weighting(alg.mod_one()), {}, alg), AlgebraError);
  EvalOptions o;
  o.mode = WlpMode::gfp_leq_one;
  CHECK_THROWS_AS(wlp_eval(p, *constant_weighting(alg.mod_one()), {}, Algebra::tropical(), o),
                  AlgebraError);
}

TEST_CASE("certain termination certifies a loop out of fuel") {
  auto alg = Algebra::counting();
  auto p = parse("while (n > 0) {n := n - 1; {skip} [] {skip}}", alg);
  EvalOptions o;
  o.fuel = 12;
  auto r = wp_eval(p, *constant_weighting(alg.mod_one()), State{{"n", 10}}, alg, o);
  CHECK(r.value == ModuleValue(ExtNat(1024)));
  CHECK(r.exact);
  o.fuel = 5;
  auto short_fuel = wp_eval(p, *constant_weighting(alg.mod_one()), State{{"n", 10}}, alg, o);
  CHECK_FALSE(short_fuel.exact);
}

TEST_CASE("budget bounds the tabulated states") {
  auto alg = Algebra::tropical();
  auto p = parse("while (x > 0) {x := x + 1}", alg);
  EvalOptions o;
  o.budget = 20;
  CHECK_THROWS_AS(wp_eval(p, *constant_weighting(alg.mod_one()), State{{"x", 1}}, alg, o),
                  BudgetExceeded);
}

TEST_CASE("bounded wlp on probabilistic programs") {
  auto alg = Algebra::probability();
  auto p = parse("while (x = 0) {{x := 1} [1/2] (+) [1/2] {x := 2}};"
                 "if (x = 2) {while (true) {skip}}",
                 alg);
  EvalOptions o;
  o.mode = WlpMode::gfp_leq_one;
  auto one = constant_weighting(alg.mod_one());
  auto zero = constant_weighting(alg.mod_zero());
  auto half = ModuleValue(ExtRational(Rational(1, 2)));
  auto wp = wp_eval(p, *one, {}, alg, o);
  auto wlp0 = wlp_eval(p, *zero, {}, alg, o);
  auto wlp1 = wlp_eval(p, *one, {}, alg, o);
  CHECK(wp.value == half);
  CHECK(wlp0.value == half);
  CHECK(wlp1.value == alg.mod_one());
  CHECK((wp.exact && wlp0.exact && wlp1.exact));

  // The unbounded gfp over ℚ≥0∪∞ is trivial: divergence weighs ∞.
  CHECK(wlp_eval(p, *zero, {}, alg).value == ModuleValue(ExtRational::infinity()));
}

TEST_CASE("bounded wlp decomposes on random probabilistic programs") {
  auto alg = Algebra::probability();
  Rng rng(19);
  EvalOptions o;
  o.mode = WlpMode::gfp_leq_one;
  o.fuel = 32;
  auto zero = constant_weighting(alg.mod_zero());
  int tested = 0;
  for (int i = 0; i < 80; ++i) {
    auto p = random_probabilistic(rng, alg, 3);
    std::vector<ModuleValue> pool;
    for (int k = 0; k < 3; ++k) pool.push_back(ExtRational(random_fraction(rng)));
    FunctionWeighting f([pool](const State& s) { return pool[s.hash() % pool.size()]; });
    State s{{"x", uniform(rng, 0, 2)}};
    auto lhs = wlp_eval(p, f, s, alg, o);
    auto wp = wp_eval(p, f, s, alg, o);
    auto div = wlp_eval(p, *zero, s, alg, o);
    if (!(lhs.exact && wp.exact && div.exact)) continue;
    ++tested;
    CAPTURE(to_string(*p, alg));
    CHECK(lhs.value == alg.mod_add(wp.value, div.value));
  }
  CHECK(tested > 20);
}

TEST_CASE("iterates ascend for wp and descend for wlp") {
  Rng rng(23);
  for (const auto& alg : has_top_instances()) {
    CAPTURE(alg.name());
    ProgramGen gen{alg};
    for (int i = 0; i < 25; ++i) {
      auto p = gen.looping(rng);
      auto f = random_weighting(rng, alg);
      auto s = gen.state(rng);
      for (auto dir : {Direction::wp, Direction::wlp}) {
        std::vector<ModuleValue> seq;
        bool monotone = true;
        EvalOptions o;
        o.fuel = 16;
        o.strategy = WlpStrategy::chain;
        o.on_iterate = [&](const State&, std::size_t round, const ModuleValue& v) {
          if (round == 1) seq.clear();
          if (!seq.empty())
            monotone = monotone && (dir == Direction::wp ? alg.nat_leq(seq.back(), v)
                                                         : alg.nat_leq(v, seq.back()));
          seq.push_back(v);
        };
        transform(dir, p, *f, s, alg, o);
        CAPTURE(to_string(*p, alg));
        CHECK(monotone);
      }
    }
  }
}

TEST_CASE("wp on loop-free programs matches the path oracle") {
  Rng rng(29);
  for (const auto& alg : all_instances()) {
    CAPTURE(alg.name());
    ProgramGen gen{alg};
    for (int i = 0; i < 40; ++i) {
      auto p = gen.loop_free(rng, 4);
      auto f = random_weighting(rng, alg);
      auto s = gen.state(rng);
      auto r = wp_eval(p, *f, s, alg);
      auto o = op_oracle(p, s, *f, alg, {100, 100000});
      CHECK(r.exact);
      CHECK(r.value == o.value);
    }
  }
}

TEST_CASE("round r of a loop is the r-fold unrolling") {
  Rng rng(31);
  for (const auto& alg : {Algebra::counting(), Algebra::tropical(), Algebra::arctic(),
                          Algebra::boolean(), Algebra::probability()}) {
    CAPTURE(alg.name());
    ProgramGen gen{alg};
    for (int i = 0; i < 20; ++i) {
      auto p = gen.looping(rng);
      auto loop = p->kind == Program::Kind::loop ? p : p->second;
      auto f = random_weighting(rng, alg);
      std::vector<ProgramPtr> unrolled{
          make_ite(loop->guard, make_weigh(weight_literal(alg.mon_zero())), make_skip(alg))};
      EvalOptions o;
      o.fuel = 6;
      o.on_iterate = [&](const State& entry, std::size_t round, const ModuleValue& v) {
        while (unrolled.size() <= round)
          unrolled.push_back(make_ite(loop->guard, make_seq(loop->first, unrolled.back()),
                                      make_skip(alg)));
        auto expected = op_oracle(unrolled[round], entry, *f, alg, {200, 1'000'000});
        CAPTURE(to_string(*loop, alg));
        CAPTURE(round);
        CHECK(expected.exact);
        CHECK(v == expected.value);
      };
      wp_eval(p, *f, gen.state(rng), alg, o);
    }
  }
}
