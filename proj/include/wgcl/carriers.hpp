#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace wgcl {

using Rational = boost::multiprecision::cpp_rational;
using Word = std::string;

/// Orders words by length first, then lexicographically.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// ℕ ∪ {∞}. Addition and multiplication saturate at ∞ with 0 · ∞ = 0;
/// a finite result that does not fit 64 bits is an error, never ∞.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr explicit ExtNat(std::uint64_t value) : value_(value) {}

  static constexpr ExtNat infinity() {
    ExtNat n;
    n.infinite_ = true;
    return n;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_zero() const { return !infinite_ && value_ == 0; }
  /// Precondition: finite.
  constexpr std::uint64_t value() const { return value_; }

  friend ExtNat operator+(ExtNat a, ExtNat b);
  friend ExtNat operator*(ExtNat a, ExtNat b);

  friend constexpr bool operator==(ExtNat a, ExtNat b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(ExtNat a, ExtNat b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const;

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

/// ℕ∞ ∪ {−∞}, the carrier of the arctic semiring. −∞ is absorbing for +.
class Arctic {
 public:
  enum class Tag : std::uint8_t { negative_infinity, finite, positive_infinity };

  constexpr Arctic() = default;
  constexpr explicit Arctic(std::uint64_t value) : value_(value) {}

  static constexpr Arctic negative_infinity() {
    Arctic a;
    a.tag_ = Tag::negative_infinity;
    return a;
  }
  static constexpr Arctic positive_infinity() {
    Arctic a;
    a.tag_ = Tag::positive_infinity;
    return a;
  }

  constexpr Tag tag() const { return tag_; }
  constexpr bool is_finite() const { return tag_ == Tag::finite; }
  constexpr std::uint64_t value() const { return value_; }

  friend Arctic operator+(Arctic a, Arctic b);

  friend constexpr bool operator==(Arctic a, Arctic b) {
    return a.tag_ == b.tag_ && (a.tag_ != Tag::finite || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Arctic a, Arctic b) {
    if (a.tag_ != b.tag_) return a.tag_ <=> b.tag_;
    if (a.tag_ != Tag::finite) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const;

 private:
  std::uint64_t value_ = 0;
  Tag tag_ = Tag::finite;
};

/// A rational number in [0, 1].
class Probability {
 public:
  Probability() = default;
  /// Throws AlgebraError outside [0, 1].
  explicit Probability(Rational value);

  const Rational& value() const { return value_; }

  friend Probability operator*(const Probability& a, const Probability& b) {
    Probability p;
    p.value_ = a.value_ * b.value_;
    return p;
  }
  friend bool operator==(const Probability&, const Probability&) = default;

 private:
  Rational value_{1};
};

/// ℚ≥0 ∪ {∞}, the module the probability monoid acts on.
class ExtRational {
 public:
  ExtRational() = default;
  /// Throws AlgebraError for negative values.
  explicit ExtRational(Rational value);

  static ExtRational infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  const Rational& value() const { return value_; }

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
  /// 0 · ∞ = 0.
  friend ExtRational operator*(const Probability& p, const ExtRational& u);

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtRational& a,
                                          const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const;

 private:
  Rational value_{0};
  bool infinite_ = false;
};

std::string to_string(const Rational& r);

/// A finite set of finite words.
class Language {
 public:
  using Words = std::set<Word, ShortLex>;

  Language() = default;
  explicit Language(Words words) : words_(std::move(words)) {}

  const Words& words() const { return words_; }
  bool empty() const { return words_.empty(); }

  Language unite(const Language& other) const;
  Language prepend(const Word& w) const;
  bool subset_of(const Language& other) const;

  friend bool operator==(const Language&, const Language&) = default;

  std::string to_string() const;

 private:
  Words words_;
};

std::string format_word(const Word& w);

}  // namespace wgcl
