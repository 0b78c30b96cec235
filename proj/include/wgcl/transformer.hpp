#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "wgcl/operational.hpp"
#include "wgcl/syntax.hpp"
#include "wgcl/weighting.hpp"

namespace wgcl {

enum class Direction { wp, wlp };

enum class WlpMode {
  gfp,          ///< greatest fixed point, iterating down from ⊤
  gfp_leq_one,  ///< probability only: greatest fixed point below 1
};

enum class WlpStrategy {
  automatic,  ///< chain first, lasso decomposition if the chain is inexact
  chain,      ///< co-Kleene iteration Φⁱ(⊤) only
  lasso,      ///< wp⟦C⟧(f) ⊕ (weight of the infinite paths) only
};

struct EvalOptions {
  /// Maximal number of Φ applications per loop evaluation.
  std::size_t fuel = 64;
  /// Maximal number of loop states tabulated during one evaluation.
  std::size_t budget = 1'000'000;
  /// Iteration stops early, flagged inexact, once a language iterate has
  /// more members (words, lassos and cylinders) than this.
  std::size_t max_value_size = 4096;
  WlpMode mode = WlpMode::gfp;
  WlpStrategy strategy = WlpStrategy::automatic;
  /// Called after every round of every loop evaluation with the state the
  /// loop was entered in, the round number (1-based) and the current iterate
  /// at that state.
  std::function<void(const State&, std::size_t, const ModuleValue&)>
      on_iterate;
};

struct TransformResult {
  ModuleValue value;
  /// Set only under a certificate: every loop reached a fixed point on the
  /// states it touched, or terminated certainly within the rounds performed,
  /// or (wlp) the lasso decomposition applied with an exact wp part.
  /// Otherwise value is a lower bound (wp) or an upper bound (wlp chain).
  bool exact = false;
  std::size_t iterations = 0;  ///< largest number of rounds of any loop
  std::size_t touched_states = 0;
  std::string certificate;
};

TransformResult wp_eval(const ProgramPtr& program, const Weighting& post,
                        const State& state, const Algebra& alg,
                        const EvalOptions& options = {});

/// Throws AlgebraError when the instance has no ⊤ (gfp mode) or is not the
/// probability instance (gfp_leq_one mode).
TransformResult wlp_eval(const ProgramPtr& program, const Weighting& post,
                         const State& state, const Algebra& alg,
                         const EvalOptions& options = {});

inline TransformResult transform(Direction dir, const ProgramPtr& program,
                                 const Weighting& post, const State& state,
                                 const Algebra& alg,
                                 const EvalOptions& options = {}) {
  return dir == Direction::wp ? wp_eval(program, post, state, alg, options)
                              : wlp_eval(program, post, state, alg, options);
}

}  // namespace wgcl
