#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "wgcl/carriers.hpp"
#include "wgcl/error.hpp"
#include "wgcl/omega_language.hpp"

namespace wgcl {

/// An element of the weight monoid M of some instance.
class Weight {
 public:
  using Repr = std::variant<bool, ExtNat, Arctic, Probability, Word>;

  Weight() = default;
  template <typename T>
    requires std::is_constructible_v<Repr, T&&>
  Weight(T&& value) : repr_(std::forward<T>(value)) {}

  const Repr& repr() const { return repr_; }
  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&repr_);
  }

  friend bool operator==(const Weight&, const Weight&) = default;

 private:
  Repr repr_;
};

/// An element of the module 𝒮 that weightings range over.
class ModuleValue {
 public:
  using Repr = std::variant<bool, ExtNat, Arctic, ExtRational, Language,
                            OmegaLanguage>;

  ModuleValue() = default;
  template <typename T>
    requires std::is_constructible_v<Repr, T&&>
  ModuleValue(T&& value) : repr_(std::forward<T>(value)) {}

  const Repr& repr() const { return repr_; }
  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&repr_);
  }

  friend bool operator==(const ModuleValue&, const ModuleValue&) = default;

 private:
  Repr repr_;
};

enum class InstanceKind {
  boolean,
  counting,
  tropical,
  arctic,
  probability,
  lang,
  omega_lang,
};

/// Result of an infinite (or truncated) sum.
struct SumResult {
  ModuleValue value;
  bool exact = true;
};

/// A monoid M together with an M-module 𝒮 and the natural order on 𝒮.
///
/// Instances are selected at run time by name:
///
///   name               M                          𝒮
///   boolean            ({0,1}, ∧, 1)              ({0,1}, ∨, 0)
///   counting           (ℕ∞, ·, 1)                 (ℕ∞, +, 0)
///   tropical           (ℕ∞, +, 0)                 (ℕ∞, min, ∞)
///   arctic             (ℕ∞∪{−∞}, +, 0)            (ℕ∞∪{−∞}, max, −∞)
///   prob               ([0,1]∩ℚ, ·, 1)            (ℚ≥0∪{∞}, +, 0)
///   lang:<Σ>           (Σ*, ·, ε)                 (finite 2^Σ*, ∪, ∅)
///   omegalang:<Σ>      (Σ*, ·, ε)                 (ω-potent languages, ∪, ∅)
///
/// All operations throw AlgebraError when handed values of another instance.
class Algebra {
 public:
  /// Accepts `boolean`, `counting`, `tropical`, `arctic`, `prob`,
  /// `lang:<alphabet>` and `omegalang:<alphabet>`.
  static Algebra parse(std::string_view name);

  static Algebra boolean() { return Algebra(InstanceKind::boolean, {}); }
  static Algebra counting() { return Algebra(InstanceKind::counting, {}); }
  static Algebra tropical() { return Algebra(InstanceKind::tropical, {}); }
  static Algebra arctic() { return Algebra(InstanceKind::arctic, {}); }
  static Algebra probability() {
    return Algebra(InstanceKind::probability, {});
  }
  static Algebra lang(std::string alphabet);
  static Algebra omega_lang(std::string alphabet);

  InstanceKind kind() const { return kind_; }
  const std::string& alphabet() const { return alphabet_; }
  std::string name() const;

  bool has_top() const;
  bool commutative() const;
  /// Whether integers embed into M and 𝒮 (`int(e)` in programs).
  bool embeddable() const;
  bool word_monoid() const {
    return kind_ == InstanceKind::lang || kind_ == InstanceKind::omega_lang;
  }

  Weight mon_one() const;
  Weight mon_zero() const;  ///< Throws for word monoids, which have no zero.
  Weight mon_mul(const Weight& a, const Weight& b) const;

  ModuleValue mod_zero() const;
  /// The image of 𝟙 in 𝒮 (𝟙 ⊗ {ε} for languages).
  ModuleValue mod_one() const;
  ModuleValue mod_add(const ModuleValue& u, const ModuleValue& v) const;
  ModuleValue scalar_mul(const Weight& a, const ModuleValue& u) const;
  /// Decides ∃c. u ⊕ c = v.
  bool nat_leq(const ModuleValue& u, const ModuleValue& v) const;
  /// Throws AlgebraError("no top element") when !has_top().
  ModuleValue top() const;

  /// Exact fold of mod_add.
  SumResult big_add(std::span<const ModuleValue> values) const;
  /// Sums a countable sequence truncated after `fuel` elements. The result is
  /// exact when the sequence ended, or when the last `window` partial sums
  /// were equal.
  SumResult big_add(const std::function<std::optional<ModuleValue>()>& next,
                    std::size_t fuel, std::size_t window = 3) const;

  Weight embed_weight(std::int64_t n) const;
  ModuleValue embed_module(std::int64_t n) const;
  /// The module value induced by a weight (a ⊗ 𝟙).
  ModuleValue lift(const Weight& a) const { return scalar_mul(a, mod_one()); }

  /// Whether a path carrying this weight contributes nothing whatever it is
  /// multiplied with (a ⊗ u = 𝟘 for all u).
  bool annihilates(const Weight& a) const;

  /// Validates membership in this instance's carriers.
  void check(const Weight& a) const;
  void check(const ModuleValue& u) const;

  Word make_word(std::string_view text) const;

  std::string format(const Weight& a) const;
  std::string format(const ModuleValue& u) const;

  friend bool operator==(const Algebra&, const Algebra&) = default;

 private:
  Algebra(InstanceKind kind, std::string alphabet)
      : kind_(kind), alphabet_(std::move(alphabet)) {}

  InstanceKind kind_;
  std::string alphabet_;
};

}  // namespace wgcl
