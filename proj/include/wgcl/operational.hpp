#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wgcl/syntax.hpp"
#include "wgcl/weighting.hpp"

namespace wgcl {

/// One small step of ⟨C, σ⟩ with the step count and history stripped.
/// `next` is null when the step terminates (⇓); `extension` is 'L' or 'R'
/// for branching steps and 0 otherwise.
struct Step {
  Weight weight;
  ProgramPtr next;
  State state;
  char extension = 0;
};

std::vector<Step> step(const ProgramPtr& program, const State& state,
                       const Algebra& alg);

/// ⟨C | ⇓, σ, n, β⟩; a null program stands for ⇓.
struct Configuration {
  ProgramPtr program;
  State state;
  std::size_t steps = 0;
  std::string history;

  bool terminated() const { return !program; }
};

struct Transition {
  Weight weight;
  Configuration target;
};

/// The transitions licensed by the structural operational semantics.
std::vector<Transition> successors(const Configuration& c, const Algebra& alg);

struct Path {
  std::vector<Configuration> configurations;
  Weight weight;  ///< ordered product of the edge weights
  bool terminal = false;
};

struct PathReport {
  std::vector<Path> paths;  ///< ordered by history, L before R
  bool truncated = false;   ///< some path was cut at the depth limit
};

/// All terminating paths of length ≤ depth and all paths cut at exactly
/// `depth`. Throws BudgetExceeded after `budget` configurations.
PathReport enumerate_paths(const Configuration& start, std::size_t depth,
                           const Algebra& alg, std::size_t budget = 1'000'000);

struct OracleOptions {
  std::size_t fuel = 64;  ///< maximal path length explored
  std::size_t budget = 1'000'000;
};

struct OracleResult {
  ModuleValue value;
  bool exact = false;
  std::size_t paths = 0;  ///< paths that contributed to the sum
};

/// ⊕ over terminating paths π of 𝒲(π) ⊗ f(last(π)), truncated at the fuel.
/// Exact when no path was cut, or when no cut path can still terminate.
OracleResult op_oracle(const ProgramPtr& program, const State& state,
                       const Weighting& post, const Algebra& alg,
                       const OracleOptions& options = {});

/// The chain sₙ = ⊕ over paths π of length n of 𝒲(π) ⊗ ⊤ for n ≤ fuel.
/// `chain`, when given, receives s₀, s₁, …. The result is the limit when it
/// is certified (the chain reached 𝟘 or the divergence value, which is the
/// limit whenever it is computable), otherwise the last sₙ flagged inexact.
OracleResult olp_oracle(const ProgramPtr& program, const State& state,
                        const Algebra& alg, const OracleOptions& options = {},
                        std::vector<ModuleValue>* chain = nullptr);

/// The finite graph of reachable (program, state) pairs: the computation
/// forest with step counts and histories quotiented out.
struct QuotientGraph {
  struct Node {
    ProgramPtr program;  ///< null for ⇓
    State state;
  };
  struct Edge {
    std::size_t target;
    Weight weight;
  };

  std::vector<Node> nodes;
  std::vector<std::vector<Edge>> edges;

  /// Explores from ⟨program, state⟩ (node 0). Edges whose weight annihilates
  /// are dropped when `drop_annihilating` is set. Throws BudgetExceeded when
  /// more than `budget` nodes are reachable.
  static QuotientGraph build(const ProgramPtr& program, const State& state,
                             const Algebra& alg, std::size_t budget,
                             bool drop_annihilating);
  /// Same, from several roots (nodes 0 .. roots.size()-1, deduplicated).
  static QuotientGraph build(const std::vector<QuotientGraph::Node>& roots,
                             const Algebra& alg, std::size_t budget,
                             bool drop_annihilating);
};

/// wlp⟦C⟧(𝟘)(σ): the total weight ⊗ ⊤ of all infinite computation paths,
/// computed on the finite quotient graph. For ω-languages the infinite paths
/// must be describable by finitely many lassos and cylinders; otherwise, and
/// for instances without ⊤, an Error is thrown.
ModuleValue diverging_weights(const ProgramPtr& program, const State& state,
                              const Algebra& alg, std::size_t budget);

struct UctResult {
  enum class Verdict { certain, refuted, unknown };

  Verdict verdict = Verdict::unknown;
  std::size_t max_length = 0;  ///< longest path, when certain
  /// When refuted: the stem and cycle of a lasso in the quotient graph.
  std::vector<QuotientGraph::Node> stem, cycle;
  std::string reason;
};

/// Universal certain termination from ⟨program, state⟩: certain when every
/// path terminates within `bound` steps, refuted when a (program, state)
/// pair repeats along some path.
UctResult uct_check(const ProgramPtr& program, const State& state,
                    const Algebra& alg, std::size_t bound,
                    std::size_t budget = 1'000'000);

std::string to_string(const UctResult::Verdict v);

}  // namespace wgcl
