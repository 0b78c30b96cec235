#include "wgcl/operational.hpp"

#include <algorithm>

namespace wgcl {

std::vector<Step> step(const ProgramPtr& program, const State& state,
                       const Algebra& alg) {
  using K = Program::Kind;
  const Program& p = *program;
  switch (p.kind) {
    case K::assign:
      return {{alg.mon_one(), nullptr,
               state.updated(p.var, eval_arith(*p.arith, state)), 0}};
    case K::weigh:
      return {{eval_weight(*p.weight, state, alg), nullptr, state, 0}};
    case K::seq: {
      std::vector<Step> out = step(p.first, state, alg);
      for (auto& s : out)
        s.next = s.next ? make_seq(s.next, p.second) : p.second;
      return out;
    }
    case K::ite:
      return {{alg.mon_one(), eval_bool(*p.guard, state) ? p.first : p.second,
               state, 0}};
    case K::loop:
      if (eval_bool(*p.guard, state))
        return {{alg.mon_one(), make_seq(p.first, program), state, 0}};
      return {{alg.mon_one(), nullptr, state, 0}};
    case K::branch:
      return {{alg.mon_one(), p.first, state, 'L'},
              {alg.mon_one(), p.second, state, 'R'}};
  }
  return {};
}

std::vector<Transition> successors(const Configuration& c, const Algebra& alg) {
  std::vector<Transition> out;
  if (c.terminated()) return out;
  for (auto& s : step(c.program, c.state, alg)) {
    Configuration target{std::move(s.next), std::move(s.state), c.steps + 1,
                         c.history};
    if (s.extension) target.history += s.extension;
    out.push_back({std::move(s.weight), std::move(target)});
  }
  return out;
}

PathReport enumerate_paths(const Configuration& start, std::size_t depth,
                           const Algebra& alg, std::size_t budget) {
  PathReport report;
  std::size_t visited = 0;
  struct Frame {
    std::vector<Transition> pending;
    std::size_t next = 0;
  };
  std::vector<Configuration> path{start};
  std::vector<Weight> weights{alg.mon_one()};
  std::vector<Frame> stack;

  auto emit = [&](bool terminal) {
    report.paths.push_back({path, weights.back(), terminal});
    if (!terminal) report.truncated = true;
  };
  auto open = [&]() {
    const Configuration& c = path.back();
    if (c.terminated()) {
      emit(true);
      return false;
    }
    if (c.steps - start.steps >= depth) {
      emit(false);
      return false;
    }
    stack.push_back({successors(c, alg), 0});
    return true;
  };

  open();
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == top.pending.size()) {
      stack.pop_back();
      path.pop_back();
      weights.pop_back();
      continue;
    }
    Transition& t = top.pending[top.next++];
    if (++visited > budget)
      throw BudgetExceeded("path enumeration exceeded the budget of " +
                           std::to_string(budget) + " configurations");
    weights.push_back(alg.mon_mul(weights.back(), t.weight));
    path.push_back(std::move(t.target));
    if (!open()) {
      path.pop_back();
      weights.pop_back();
    }
  }
  return report;
}

namespace {

struct Item {
  ProgramPtr program;
  State state;
  Weight weight;
};

bool prunable(const Algebra& alg, const Weight& w) {
  return alg.annihilates(w);
}

void charge(std::size_t& used, std::size_t budget) {
  if (++used > budget)
    throw BudgetExceeded("path exploration exceeded the budget of " +
                         std::to_string(budget) + " configurations");
}

// Whether some computation starting in one of the items can still terminate.
bool can_terminate(const std::vector<Item>& frontier, const Algebra& alg,
                   std::size_t budget) {
  std::vector<QuotientGraph::Node> roots;
  for (const auto& item : frontier) roots.push_back({item.program, item.state});
  try {
    auto graph = QuotientGraph::build(roots, alg, budget, true);
    return std::any_of(graph.nodes.begin(), graph.nodes.end(),
                       [](const auto& n) { return !n.program; });
  } catch (const BudgetExceeded&) {
    return true;
  }
}

}  // namespace

OracleResult op_oracle(const ProgramPtr& program, const State& state,
                       const Weighting& post, const Algebra& alg,
                       const OracleOptions& options) {
  OracleResult result{alg.mod_zero(), false, 0};
  std::vector<Item> frontier{{program, state, alg.mon_one()}};
  std::size_t used = 0;
  for (std::size_t depth = 0; depth < options.fuel && !frontier.empty(); ++depth) {
    std::vector<Item> next;
    for (const auto& item : frontier) {
      for (auto& s : step(item.program, item.state, alg)) {
        charge(used, options.budget);
        Weight w = alg.mon_mul(item.weight, s.weight);
        if (prunable(alg, w)) continue;
        if (!s.next) {
          result.value =
              alg.mod_add(result.value, alg.scalar_mul(w, post.at(s.state)));
          ++result.paths;
        } else {
          next.push_back({std::move(s.next), std::move(s.state), std::move(w)});
        }
      }
    }
    frontier = std::move(next);
  }
  result.exact =
      frontier.empty() || !can_terminate(frontier, alg, options.budget);
  return result;
}

OracleResult olp_oracle(const ProgramPtr& program, const State& state,
                        const Algebra& alg, const OracleOptions& options,
                        std::vector<ModuleValue>* chain) {
  const ModuleValue top = alg.top();
  const ModuleValue zero = alg.mod_zero();
  std::optional<ModuleValue> limit;
  try {
    limit = diverging_weights(program, state, alg, options.budget);
  } catch (const Error&) {
  }

  OracleResult result{top, false, 0};
  if (chain) chain->push_back(top);
  std::vector<Item> frontier{{program, state, alg.mon_one()}};
  std::size_t used = 0;
  for (std::size_t n = 1; n <= options.fuel; ++n) {
    ModuleValue s = zero;
    std::vector<Item> next;
    for (const auto& item : frontier) {
      for (auto& st : step(item.program, item.state, alg)) {
        charge(used, options.budget);
        Weight w = alg.mon_mul(item.weight, st.weight);
        if (prunable(alg, w)) continue;
        s = alg.mod_add(s, alg.scalar_mul(w, top));
        if (st.next) next.push_back({std::move(st.next), std::move(st.state), std::move(w)});
      }
    }
    frontier = std::move(next);
    result.paths = frontier.size();
    result.value = s;
    if (chain) chain->push_back(s);
    if (s == zero || (limit && s == *limit)) {
      result.exact = true;
      return result;
    }
  }
  if (limit) return {*limit, true, result.paths};
  return result;
}

std::string to_string(const UctResult::Verdict v) {
  switch (v) {
    case UctResult::Verdict::certain:
      return "certain";
    case UctResult::Verdict::refuted:
      return "refuted";
    case UctResult::Verdict::unknown:
      return "unknown";
  }
  return "?";
}

}  // namespace wgcl
