#include "wgcl/transformer.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace wgcl {

namespace {

struct Valued {
  ModuleValue value;
  bool exact = true;
};

using ContFn = std::function<Valued(const State&)>;
using Cont = std::shared_ptr<const ContFn>;

std::size_t value_size(const ModuleValue& u) {
  if (auto l = u.get_if<Language>()) return l->words().size();
  if (auto o = u.get_if<OmegaLanguage>())
    return o->finite_words().size() + o->lassos().size() + o->cylinders().size();
  return 1;
}

template <typename F>
Cont make_cont(F&& f) {
  return std::make_shared<const ContFn>(std::forward<F>(f));
}

class Evaluator {
 public:
  Evaluator(const Algebra& alg, Direction dir, const EvalOptions& options)
      : alg_(alg), options_(options) {
    if (dir == Direction::wp) {
      seed_ = alg.mod_zero();
    } else if (options.mode == WlpMode::gfp) {
      seed_ = alg.top();
    } else {
      if (alg.kind() != InstanceKind::probability)
        throw AlgebraError("the bounded wlp mode needs the prob instance");
      seed_ = ExtRational(1);
      cap_ = true;
    }
  }

  Valued run(const ProgramPtr& program, const Cont& k, const State& s) {
    using K = Program::Kind;
    const Program& p = *program;
    switch (p.kind) {
      case K::assign:
        return (*k)(s.updated(p.var, eval_arith(*p.arith, s)));
      case K::weigh: {
        Weight a = eval_weight(*p.weight, s, alg_);
        Valued rest = (*k)(s);
        return {alg_.scalar_mul(a, rest.value), rest.exact};
      }
      case K::seq: {
        auto memo = std::make_shared<std::unordered_map<State, Valued>>();
        ProgramPtr second = p.second;
        Cont next = make_cont([this, memo, second, k](const State& t) {
          auto it = memo->find(t);
          if (it != memo->end()) return it->second;
          Valued v = run(second, k, t);
          memo->emplace(t, v);
          return v;
        });
        return run(p.first, next, s);
      }
      case K::ite:
        return run(eval_bool(*p.guard, s) ? p.first : p.second, k, s);
      case K::branch: {
        Valued l = run(p.first, k, s);
        Valued r = run(p.second, k, s);
        return {alg_.mod_add(l.value, r.value), l.exact && r.exact};
      }
      case K::loop:
        return loop(program, k, s);
    }
    return {};
  }

  std::size_t touched() const { return touched_; }
  std::size_t rounds() const { return max_rounds_; }
  bool used_uct() const { return used_uct_; }

 private:
  ModuleValue capped(ModuleValue v) const {
    if (cap_ && !alg_.nat_leq(v, seed_)) return seed_;
    return v;
  }

  // Computes Φʳ(seed) at the entry state for r = 1, 2, … where
  // Φ(X) = [¬φ] k ⊕ [φ] T⟦body⟧(X). Level k of the memo holds Φᵏ(seed) at the
  // states some unrolling has asked for; level 0 is the seed itself.
  Valued loop(const ProgramPtr& program, const Cont& k, const State& entry) {
    const Program& p = *program;
    if (!eval_bool(*p.guard, entry)) return (*k)(entry);

    std::vector<std::unordered_map<State, Valued>> levels(1);
    std::unordered_set<State> touched, expanded;
    std::vector<Cont> conts;

    std::function<Valued(const State&, std::size_t)> value =
        [&](const State& t, std::size_t level) -> Valued {
      if (!eval_bool(*p.guard, t)) return (*k)(t);
      if (touched.insert(t).second) ++touched_;
      if (level == 0) return {seed_, true};
      auto& memo = levels[level];
      if (auto it = memo.find(t); it != memo.end()) return it->second;
      if (++entries_ > options_.budget)
        throw BudgetExceeded("loop evaluation tabulated more than " +
                             std::to_string(options_.budget) + " values");
      expanded.insert(t);
      Valued v = run(p.first, conts[level - 1], t);
      v.value = capped(std::move(v.value));
      return levels[level].emplace(t, std::move(v)).first->second;
    };
    auto level_cont = [&](std::size_t level) {
      return make_cont([&value, level](const State& t) { return value(t, level); });
    };
    conts.push_back(level_cont(0));

    Valued current;
    bool oversized = false;
    std::size_t round = 0;
    while (round < options_.fuel && !oversized) {
      ++round;
      levels.emplace_back();
      conts.push_back(level_cont(round));
      current = value(entry, round);
      oversized = value_size(current.value) > options_.max_value_size;
      if (options_.on_iterate) options_.on_iterate(entry, round, current.value);
      // Once every touched state has been unrolled, the touched set is closed
      // under the body, and Φʳ = Φʳ⁻¹ on it is a fixed point reached from the
      // seed.
      if (round < 2 || expanded.size() != touched.size()) continue;
      const std::vector<State> states(touched.begin(), touched.end());
      bool stable = true, exact = true;
      for (const auto& t : states) {
        Valued now = value(t, round), before = value(t, round - 1);
        exact = exact && now.exact && before.exact;
        stable = stable && now.value == before.value;
        oversized = oversized || value_size(now.value) > options_.max_value_size;
        if (!stable) break;
      }
      if (stable && touched.size() == states.size()) {
        max_rounds_ = std::max(max_rounds_, round);
        return {current.value, exact};
      }
    }
    max_rounds_ = std::max(max_rounds_, round);
    // Out of fuel or the iterates grew too large. If every path from the
    // entry state leaves the loop within the rounds performed, the seed never
    // influenced the entry value.
    bool exact = false;
    if (current.exact) {
      UctResult uct = uct_check(program, entry, alg_, round, options_.budget);
      exact = uct.verdict == UctResult::Verdict::certain;
      used_uct_ = used_uct_ || exact;
    }
    return {current.value, exact};
  }

  const Algebra& alg_;
  const EvalOptions& options_;
  ModuleValue seed_;
  bool cap_ = false;
  std::size_t touched_ = 0;
  std::size_t entries_ = 0;
  std::size_t max_rounds_ = 0;
  bool used_uct_ = false;
};

bool has_loop(const ProgramPtr& p) {
  if (!p) return false;
  return p->kind == Program::Kind::loop || has_loop(p->first) ||
         has_loop(p->second);
}

TransformResult evaluate(Direction dir, const ProgramPtr& program,
                         const Weighting& post, const State& state,
                         const Algebra& alg, const EvalOptions& options) {
  Evaluator ev(alg, dir, options);
  Cont k = make_cont([&](const State& s) { return Valued{post.at(s), true}; });
  Valued v = ev.run(program, k, state);
  TransformResult r{std::move(v.value), v.exact, ev.rounds(), ev.touched(), ""};
  if (r.exact)
    r.certificate = !has_loop(program) ? "loop-free"
                    : ev.used_uct()    ? "certain termination"
                                       : "fixed point";
  return r;
}

TransformResult lasso(const ProgramPtr& program, const Weighting& post,
                      const State& state, const Algebra& alg,
                      const EvalOptions& options) {
  if (options.mode != WlpMode::gfp)
    throw Error("the lasso strategy applies to the unbounded wlp only");
  TransformResult wp = evaluate(Direction::wp, program, post, state, alg, options);
  ModuleValue divergence = diverging_weights(program, state, alg, options.budget);
  wp.value = alg.mod_add(wp.value, divergence);
  if (wp.exact) wp.certificate = "lasso decomposition";
  return wp;
}

}  // namespace

TransformResult wp_eval(const ProgramPtr& program, const Weighting& post,
                        const State& state, const Algebra& alg,
                        const EvalOptions& options) {
  return evaluate(Direction::wp, program, post, state, alg, options);
}

TransformResult wlp_eval(const ProgramPtr& program, const Weighting& post,
                         const State& state, const Algebra& alg,
                         const EvalOptions& options) {
  switch (options.strategy) {
    case WlpStrategy::chain:
      return evaluate(Direction::wlp, program, post, state, alg, options);
    case WlpStrategy::lasso:
      alg.top();
      return lasso(program, post, state, alg, options);
    case WlpStrategy::automatic:
      break;
  }
  TransformResult chain =
      evaluate(Direction::wlp, program, post, state, alg, options);
  if (chain.exact || options.mode != WlpMode::gfp) return chain;
  try {
    TransformResult decomposed = lasso(program, post, state, alg, options);
    if (decomposed.exact) return decomposed;
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const Error&) {
    // Divergence not representable; keep the chain's upper bound.
  }
  return chain;
}

}  // namespace wgcl
