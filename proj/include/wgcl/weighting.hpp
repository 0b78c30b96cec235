#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>

#include "wgcl/syntax.hpp"

namespace wgcl {

/// A function from states to module values.
class Weighting {
 public:
  virtual ~Weighting() = default;
  virtual ModuleValue at(const State& s) const = 0;
};

using WeightingPtr = std::shared_ptr<const Weighting>;

/// The denotation of a weighting expression.
class ExprWeighting final : public Weighting {
 public:
  ExprWeighting(Algebra alg, WeightingExprPtr expr)
      : alg_(std::move(alg)), expr_(std::move(expr)) {}

  ModuleValue at(const State& s) const override {
    return eval_weighting(*expr_, s, alg_);
  }
  const WeightingExprPtr& expr() const { return expr_; }

 private:
  Algebra alg_;
  WeightingExprPtr expr_;
};

/// Finitely many explicit values and a default everywhere else.
class TableWeighting final : public Weighting {
 public:
  explicit TableWeighting(ModuleValue fallback) : fallback_(std::move(fallback)) {}

  void set(const State& s, ModuleValue value) { table_[s] = std::move(value); }
  ModuleValue at(const State& s) const override {
    auto it = table_.find(s);
    return it == table_.end() ? fallback_ : it->second;
  }
  std::size_t size() const { return table_.size(); }

 private:
  std::unordered_map<State, ModuleValue> table_;
  ModuleValue fallback_;
};

class FunctionWeighting final : public Weighting {
 public:
  explicit FunctionWeighting(std::function<ModuleValue(const State&)> fn)
      : fn_(std::move(fn)) {}
  ModuleValue at(const State& s) const override { return fn_(s); }

 private:
  std::function<ModuleValue(const State&)> fn_;
};

inline WeightingPtr make_weighting(const Algebra& alg, WeightingExprPtr expr) {
  return std::make_shared<ExprWeighting>(alg, std::move(expr));
}

inline WeightingPtr constant_weighting(ModuleValue value) {
  return std::make_shared<TableWeighting>(std::move(value));
}

}  // namespace wgcl
