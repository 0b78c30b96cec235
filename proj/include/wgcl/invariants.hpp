#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wgcl/transformer.hpp"

namespace wgcl {

/// Finds the loop to reason about. With an empty path the program must
/// contain exactly one loop outside of loop bodies; otherwise `path` lists
/// child indices separated by dots ("1.0": second component, then its first
/// child). Throws Error("not a loop") when no loop is selected.
ProgramPtr select_loop(const ProgramPtr& program, std::string_view path = {});

/// Φ_f(X) = [¬φ] ⊙ f ⊕ [φ] ⊙ T⟦body⟧(X) for T = wp or wlp.
struct CharacteristicFn {
  BoolPtr guard;
  ProgramPtr body;
  WeightingPtr post;
  Direction direction = Direction::wp;

  static CharacteristicFn of(const ProgramPtr& loop, WeightingPtr post,
                             Direction direction);
};

/// Φ(I)(σ). Throws CertificationError when the body transformer is not
/// exact at σ.
ModuleValue apply_char_fn(const CharacteristicFn& phi, const Weighting& inv,
                          const State& state, const Algebra& alg,
                          const EvalOptions& options = {});

struct StateVerdict {
  State state;
  ModuleValue lhs;  ///< left side of the checked relation
  ModuleValue rhs;
  bool holds = false;
  /// fixed-point checks: certain termination of the loop from this state,
  /// and whether Φ(I) = I also holds on every loop state reachable from it.
  std::optional<UctResult::Verdict> uct;
  bool closed = false;
  std::size_t reachable = 0;
};

struct CheckReport {
  std::vector<StateVerdict> states;
  bool all_hold = true;
  std::string conclusion;
};

/// Φ_f(I) ⊑ I on every state; by Park induction then wp ⊑ I there.
CheckReport check_superinvariant(const ProgramPtr& loop, WeightingPtr post,
                                 const Weighting& inv,
                                 const std::vector<State>& states,
                                 const Algebra& alg,
                                 const EvalOptions& options = {});

/// I ⊑ Φ̃_f(I) on every state; then I ⊑ wlp there.
CheckReport check_subinvariant(const ProgramPtr& loop, WeightingPtr post,
                               const Weighting& inv,
                               const std::vector<State>& states,
                               const Algebra& alg,
                               const EvalOptions& options = {});

/// Φ_f(I) = I on every state. Where the loop terminates certainly from σ and
/// I is a fixed point on all loop states reachable from σ, wp = wlp = I at σ.
CheckReport check_fixed_point(const ProgramPtr& loop, WeightingPtr post,
                              const Weighting& inv,
                              const std::vector<State>& states,
                              const Algebra& alg,
                              const EvalOptions& options = {});

enum class Decomposition { equal, differ, untested };

struct DecompositionVerdict {
  State state;
  ModuleValue wlp;                 ///< wlp⟦C⟧(f)
  ModuleValue wp;                  ///< wp⟦C⟧(f)
  ModuleValue divergence;          ///< wlp⟦C⟧(𝟘)
  ModuleValue sum;                 ///< wp ⊕ divergence
  Decomposition verdict = Decomposition::untested;
};

/// wlp⟦C⟧(f) = wp⟦C⟧(f) ⊕ wlp⟦C⟧(𝟘), tested only where all three values
/// are exact.
std::vector<DecompositionVerdict> check_decomposition(
    const ProgramPtr& program, const Weighting& post,
    const std::vector<State>& states, const Algebra& alg,
    const EvalOptions& options = {});

std::string to_string(Decomposition d);

}  // namespace wgcl
