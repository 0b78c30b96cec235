#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "wgcl/algebra.hpp"

namespace wgcl {

/// A program state: variables not in the map hold 0, and the map never stores
/// a zero, so structurally equal states are equal as functions.
class State {
 public:
  using Map = std::map<std::string, std::int64_t>;

  State() = default;
  State(std::initializer_list<Map::value_type> values);
  explicit State(const Map& values);

  std::int64_t get(const std::string& var) const;
  /// σ[x ↦ v]; this state is left untouched.
  State updated(const std::string& var, std::int64_t value) const;

  const Map& values() const { return values_; }
  bool empty() const { return values_.empty(); }
  std::size_t hash() const { return hash_; }

  /// `{x:1, y:7}`.
  std::string to_string() const;

  friend bool operator==(const State& a, const State& b) {
    return a.hash_ == b.hash_ && a.values_ == b.values_;
  }
  friend auto operator<=>(const State& a, const State& b) {
    return a.values_ <=> b.values_;
  }

 private:
  void rehash();

  Map values_;
  std::size_t hash_ = 0;
};

inline State state_update(const State& s, const std::string& var,
                          std::int64_t value) {
  return s.updated(var, value);
}

struct StateHash {
  std::size_t operator()(const State& s) const { return s.hash(); }
};

// ---------------------------------------------------------------------------
// Expressions

struct ArithExpr;
struct BoolExpr;
struct WeightExpr;
struct WeightingExpr;
struct Program;
using ArithPtr = std::shared_ptr<const ArithExpr>;
using BoolPtr = std::shared_ptr<const BoolExpr>;
using WeightExprPtr = std::shared_ptr<const WeightExpr>;
using WeightingExprPtr = std::shared_ptr<const WeightingExpr>;
using ProgramPtr = std::shared_ptr<const Program>;

struct ArithExpr {
  enum class Kind { constant, variable, add, sub, mul, neg, min, max, fib };

  Kind kind;
  std::int64_t value = 0;  // constant
  std::string name;        // variable
  ArithPtr lhs, rhs;       // rhs unused for neg and fib
  std::size_t hash = 0;
};

ArithPtr arith_const(std::int64_t value);
ArithPtr arith_var(std::string name);
ArithPtr arith_binary(ArithExpr::Kind kind, ArithPtr lhs, ArithPtr rhs);
ArithPtr arith_unary(ArithExpr::Kind kind, ArithPtr operand);

enum class CmpOp { eq, ne, lt, le, gt, ge };

struct BoolExpr {
  enum class Kind { constant, compare, conj, disj, negation };

  Kind kind;
  bool value = false;         // constant
  CmpOp cmp = CmpOp::eq;      // compare
  ArithPtr left, right;       // compare
  BoolPtr lhs, rhs;           // conj, disj; negation uses lhs
  std::size_t hash = 0;
};

BoolPtr bool_const(bool value);
BoolPtr bool_compare(CmpOp op, ArithPtr left, ArithPtr right);
BoolPtr bool_and(BoolPtr lhs, BoolPtr rhs);
BoolPtr bool_or(BoolPtr lhs, BoolPtr rhs);
BoolPtr bool_not(BoolPtr operand);

/// A weight: a literal of M or int(e) for instances with an integer
/// embedding.
struct WeightExpr {
  enum class Kind { literal, embed };

  Kind kind;
  Weight literal;
  ArithPtr arith;
  std::size_t hash = 0;
};

WeightExprPtr weight_literal(Weight value);
WeightExprPtr weight_embed(ArithPtr arith);

/// Guarded sums of module values, used for postweightings and invariants.
struct WeightingExpr {
  enum class Kind { zero, one, top, literal, embed, guard, sum, scale };

  Kind kind;
  ModuleValue literal;
  ArithPtr arith;            // embed
  BoolPtr guard;             // guard
  WeightExprPtr weight;      // scale
  WeightingExprPtr lhs, rhs; // sum uses both; guard and scale use lhs
  std::size_t hash = 0;
};

WeightingExprPtr weighting_zero();
WeightingExprPtr weighting_one();
WeightingExprPtr weighting_top();
WeightingExprPtr weighting_literal(ModuleValue value);
WeightingExprPtr weighting_embed(ArithPtr arith);
WeightingExprPtr weighting_guard(BoolPtr guard, WeightingExprPtr body);
WeightingExprPtr weighting_sum(WeightingExprPtr lhs, WeightingExprPtr rhs);
WeightingExprPtr weighting_scale(WeightExprPtr weight, WeightingExprPtr body);

// ---------------------------------------------------------------------------
// Programs

struct Program {
  enum class Kind { assign, seq, ite, loop, branch, weigh };

  Kind kind;
  std::string var;          // assign
  ArithPtr arith;           // assign
  BoolPtr guard;            // ite, loop
  WeightExprPtr weight;     // weigh
  ProgramPtr first, second; // seq, ite, branch; loop body in first
  std::size_t hash = 0;
};

ProgramPtr make_assign(std::string var, ArithPtr value);
ProgramPtr make_seq(ProgramPtr first, ProgramPtr second);
ProgramPtr make_ite(BoolPtr guard, ProgramPtr then_branch,
                    ProgramPtr else_branch);
ProgramPtr make_while(BoolPtr guard, ProgramPtr body);
ProgramPtr make_branch(ProgramPtr left, ProgramPtr right);
ProgramPtr make_weigh(WeightExprPtr weight);
/// skip, i.e. weigh 𝟙.
ProgramPtr make_skip(const Algebra& algebra);

/// Deep structural equality; shared subterms compare in O(1).
bool equal(const ArithPtr& a, const ArithPtr& b);
bool equal(const BoolPtr& a, const BoolPtr& b);
bool equal(const WeightExprPtr& a, const WeightExprPtr& b);
bool equal(const WeightingExprPtr& a, const WeightingExprPtr& b);
bool equal(const ProgramPtr& a, const ProgramPtr& b);

/// Number of AST nodes.
std::size_t program_size(const ProgramPtr& p);

// ---------------------------------------------------------------------------
// Evaluation. All evaluators are total on states except for the reported
// EvalError cases (64-bit overflow, negative embeddings).

std::int64_t eval_arith(const ArithExpr& e, const State& s);
bool eval_bool(const BoolExpr& b, const State& s);
Weight eval_weight(const WeightExpr& w, const State& s, const Algebra& alg);
ModuleValue eval_weighting(const WeightingExpr& f, const State& s,
                           const Algebra& alg);

/// fib(0) = 0, fib(1) = 1, fib(n) = 0 for n < 0. Throws EvalError when the
/// value exceeds 64 bits.
std::int64_t fib(std::int64_t n);

// ---------------------------------------------------------------------------
// Printing. The output parses back to a structurally equal tree.

std::string to_string(const ArithExpr& e);
std::string to_string(const BoolExpr& b);
std::string to_string(const WeightExpr& w, const Algebra& alg);
std::string to_string(const WeightingExpr& f, const Algebra& alg);
std::string to_string(const Program& p, const Algebra& alg);

}  // namespace wgcl

template <>
struct std::hash<wgcl::State> {
  std::size_t operator()(const wgcl::State& s) const { return s.hash(); }
};
