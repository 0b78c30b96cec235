#include "wgcl/invariants.hpp"

#include <charconv>

namespace wgcl {

namespace {

void top_level_loops(const ProgramPtr& p, std::vector<ProgramPtr>& out) {
  if (!p) return;
  if (p->kind == Program::Kind::loop) {
    out.push_back(p);
    return;
  }
  top_level_loops(p->first, out);
  top_level_loops(p->second, out);
}

StateVerdict verdict(const State& s, ModuleValue lhs, ModuleValue rhs) {
  StateVerdict v;
  v.state = s;
  v.lhs = std::move(lhs);
  v.rhs = std::move(rhs);
  return v;
}

}  // namespace

ProgramPtr select_loop(const ProgramPtr& program, std::string_view path) {
  if (path.empty()) {
    std::vector<ProgramPtr> loops;
    top_level_loops(program, loops);
    if (loops.empty()) throw Error("not a loop: the program contains no loop");
    if (loops.size() > 1)
      throw Error("the program has " + std::to_string(loops.size()) +
                  " loops; select one with a loop path");
    return loops.front();
  }
  ProgramPtr p = program;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t end = path.find('.', start);
    if (end == std::string_view::npos) end = path.size();
    std::string_view item = path.substr(start, end - start);
    unsigned index = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), index);
    if (ec != std::errc() || ptr != item.data() + item.size())
      throw Error("malformed loop path '" + std::string(path) + "'");
    ProgramPtr child = index == 0 ? p->first : index == 1 ? p->second : nullptr;
    if (!child)
      throw Error("loop path '" + std::string(path) + "' leaves the program");
    p = child;
    start = end + 1;
  }
  if (p->kind != Program::Kind::loop)
    throw Error("not a loop: loop path '" + std::string(path) +
                "' selects a statement that is not a loop");
  return p;
}

CharacteristicFn CharacteristicFn::of(const ProgramPtr& loop, WeightingPtr post,
                                      Direction direction) {
  if (!loop || loop->kind != Program::Kind::loop) throw Error("not a loop");
  return {loop->guard, loop->first, std::move(post), direction};
}

ModuleValue apply_char_fn(const CharacteristicFn& phi, const Weighting& inv,
                          const State& state, const Algebra& alg,
                          const EvalOptions& options) {
  if (!eval_bool(*phi.guard, state)) return phi.post->at(state);
  TransformResult r = transform(phi.direction, phi.body, inv, state, alg, options);
  if (!r.exact)
    throw CertificationError("cannot certify Φ application at " +
                             state.to_string() +
                             ": the loop body's transformer is not exact");
  return r.value;
}

CheckReport check_superinvariant(const ProgramPtr& loop, WeightingPtr post,
                                 const Weighting& inv,
                                 const std::vector<State>& states,
                                 const Algebra& alg,
                                 const EvalOptions& options) {
  auto phi = CharacteristicFn::of(loop, std::move(post), Direction::wp);
  CheckReport report;
  for (const auto& s : states) {
    StateVerdict v = verdict(s, apply_char_fn(phi, inv, s, alg, options), inv.at(s));
    v.holds = alg.nat_leq(v.lhs, v.rhs);
    report.all_hold = report.all_hold && v.holds;
    report.states.push_back(std::move(v));
  }
  report.conclusion = report.all_hold
                          ? "Φ(I) ⊑ I on all checked states, so wp ⊑ I there"
                          : "Φ(I) ⊑ I fails on some checked state";
  return report;
}

CheckReport check_subinvariant(const ProgramPtr& loop, WeightingPtr post,
                               const Weighting& inv,
                               const std::vector<State>& states,
                               const Algebra& alg,
                               const EvalOptions& options) {
  alg.top();
  auto phi = CharacteristicFn::of(loop, std::move(post), Direction::wlp);
  CheckReport report;
  for (const auto& s : states) {
    StateVerdict v = verdict(s, inv.at(s), apply_char_fn(phi, inv, s, alg, options));
    v.holds = alg.nat_leq(v.lhs, v.rhs);
    report.all_hold = report.all_hold && v.holds;
    report.states.push_back(std::move(v));
  }
  report.conclusion = report.all_hold
                          ? "I ⊑ Φ̃(I) on all checked states, so I ⊑ wlp there"
                          : "I ⊑ Φ̃(I) fails on some checked state";
  return report;
}

CheckReport check_fixed_point(const ProgramPtr& loop, WeightingPtr post,
                              const Weighting& inv,
                              const std::vector<State>& states,
                              const Algebra& alg,
                              const EvalOptions& options) {
  auto phi = CharacteristicFn::of(loop, std::move(post), Direction::wp);
  CheckReport report;
  std::unordered_map<State, bool> fixed;
  auto is_fixed = [&](const State& s) {
    auto it = fixed.find(s);
    if (it != fixed.end()) return it->second;
    bool holds = apply_char_fn(phi, inv, s, alg, options) == inv.at(s);
    fixed.emplace(s, holds);
    return holds;
  };
  std::size_t unique = 0;
  for (const auto& s : states) {
    StateVerdict v = verdict(s, apply_char_fn(phi, inv, s, alg, options), inv.at(s));
    v.holds = v.lhs == v.rhs;
    fixed.emplace(s, v.holds);
    UctResult uct = uct_check(loop, s, alg, options.budget, options.budget);
    v.uct = uct.verdict;
    if (v.holds && uct.verdict == UctResult::Verdict::certain) {
      auto graph = QuotientGraph::build(loop, s, alg, options.budget, false);
      v.closed = true;
      for (const auto& node : graph.nodes) {
        if (!equal(node.program, loop) || !eval_bool(*loop->guard, node.state))
          continue;
        ++v.reachable;
        if (!is_fixed(node.state)) {
          v.closed = false;
          break;
        }
      }
    }
    if (v.closed) ++unique;
    report.all_hold = report.all_hold && v.holds;
    report.states.push_back(std::move(v));
  }
  if (!report.all_hold)
    report.conclusion = "Φ(I) = I fails on some checked state";
  else if (unique == states.size())
    report.conclusion =
        "Φ(I) = I on all checked states and the loop terminates certainly "
        "from each of them: wp = wlp = I on the checked states";
  else
    report.conclusion = "Φ(I) = I on all checked states; wp = wlp = I holds on " +
                        std::to_string(unique) + " of " +
                        std::to_string(states.size()) +
                        " states (certain termination, fixed point on all "
                        "reachable loop states)";
  return report;
}

std::vector<DecompositionVerdict> check_decomposition(
    const ProgramPtr& program, const Weighting& post,
    const std::vector<State>& states, const Algebra& alg,
    const EvalOptions& options) {
  const auto zero = constant_weighting(alg.mod_zero());
  std::vector<DecompositionVerdict> out;
  for (const auto& s : states) {
    TransformResult lhs = wlp_eval(program, post, s, alg, options);
    TransformResult wp = wp_eval(program, post, s, alg, options);
    TransformResult div = wlp_eval(program, *zero, s, alg, options);
    DecompositionVerdict v{s, lhs.value, wp.value, div.value,
                           alg.mod_add(wp.value, div.value)};
    if (lhs.exact && wp.exact && div.exact)
      v.verdict = v.wlp == v.sum ? Decomposition::equal : Decomposition::differ;
    out.push_back(std::move(v));
  }
  return out;
}

std::string to_string(Decomposition d) {
  switch (d) {
    case Decomposition::equal:
      return "equal";
    case Decomposition::differ:
      return "differ";
    case Decomposition::untested:
      return "untested";
  }
  return "?";
}

}  // namespace wgcl
