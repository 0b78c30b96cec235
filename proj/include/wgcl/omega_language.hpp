#pragma once

#include <compare>
#include <set>
#include <string>

#include "wgcl/carriers.hpp"

namespace wgcl {

/// An ultimately periodic ω-word prefix · period^ω.
struct Lasso {
  Word prefix;
  Word period;

  /// Primitive period, shortest prefix. Throws AlgebraError on an empty
  /// period.
  static Lasso canonical(Word prefix, Word period);

  /// The first `n` symbols of the ω-word.
  Word expand(std::size_t n) const;

  friend bool operator==(const Lasso&, const Lasso&) = default;
  friend auto operator<=>(const Lasso& a, const Lasso& b) {
    ShortLex less;
    if (a.prefix != b.prefix)
      return less(a.prefix, b.prefix) ? std::strong_ordering::less
                                      : std::strong_ordering::greater;
    if (a.period != b.period)
      return less(a.period, b.period) ? std::strong_ordering::less
                                      : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

/// A subset of Σ* ∪ Σ^ω given as a finite union of finite words, lassos and
/// cylinders w·Σ^∞ (all finite and infinite words with prefix w).
///
/// Values are kept canonical so that structural equality is set equality:
///  - lassos are canonical,
///  - the cylinder prefixes form an antichain under the prefix order,
///  - no finite word or lasso lies inside a cylinder,
///  - {w} ∪ ⋃_{a∈Σ} wa·Σ^∞ is always collapsed into w·Σ^∞.
/// Under these rules, w·Σ^∞ ⊆ L holds iff L has a cylinder whose prefix is a
/// prefix of w, which makes inclusion decidable.
class OmegaLanguage {
 public:
  using Words = std::set<Word, ShortLex>;
  using Lassos = std::set<Lasso>;

  OmegaLanguage() = default;
  explicit OmegaLanguage(std::string alphabet) : alphabet_(std::move(alphabet)) {}
  OmegaLanguage(std::string alphabet, Words finite, Lassos lassos,
                Words cylinders);

  static OmegaLanguage empty(std::string alphabet) {
    return OmegaLanguage(std::move(alphabet));
  }
  /// Σ^∞ itself, the cylinder over the empty word.
  static OmegaLanguage full(std::string alphabet);

  const std::string& alphabet() const { return alphabet_; }
  const Words& finite_words() const { return finite_; }
  const Lassos& lassos() const { return lassos_; }
  const Words& cylinders() const { return cylinders_; }

  bool is_empty() const {
    return finite_.empty() && lassos_.empty() && cylinders_.empty();
  }
  bool is_full() const { return cylinders_.count(Word{}) > 0; }

  OmegaLanguage unite(const OmegaLanguage& other) const;
  /// Left concatenation w · L.
  OmegaLanguage prepend(const Word& w) const;
  bool subset_of(const OmegaLanguage& other) const;

  bool contains_word(const Word& w) const;
  bool contains_lasso(const Lasso& l) const;

  friend bool operator==(const OmegaLanguage&, const OmegaLanguage&) = default;

  std::string to_string() const;

 private:
  void canonicalize();
  bool covered_by_cylinder(const Word& w) const;

  std::string alphabet_;
  Words finite_;
  Lassos lassos_;
  Words cylinders_;
};

}  // namespace wgcl
