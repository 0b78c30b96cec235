#include "wgcl/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace wgcl {

// ---------------------------------------------------------------------------
// Carriers

ExtNat operator+(ExtNat a, ExtNat b) {
  if (a.infinite_ || b.infinite_) return ExtNat::infinity();
  std::uint64_t sum;
  if (__builtin_add_overflow(a.value_, b.value_, &sum))
    throw AlgebraError("extended natural overflow in addition");
  return ExtNat(sum);
}

ExtNat operator*(ExtNat a, ExtNat b) {
  if (a.is_zero() || b.is_zero()) return ExtNat(0);
  if (a.infinite_ || b.infinite_) return ExtNat::infinity();
  std::uint64_t product;
  if (__builtin_mul_overflow(a.value_, b.value_, &product))
    throw AlgebraError("extended natural overflow in multiplication");
  return ExtNat(product);
}

std::string ExtNat::to_string() const {
  return infinite_ ? "inf" : std::to_string(value_);
}

Arctic operator+(Arctic a, Arctic b) {
  using Tag = Arctic::Tag;
  if (a.tag_ == Tag::negative_infinity || b.tag_ == Tag::negative_infinity)
    return Arctic::negative_infinity();
  if (a.tag_ == Tag::positive_infinity || b.tag_ == Tag::positive_infinity)
    return Arctic::positive_infinity();
  std::uint64_t sum;
  if (__builtin_add_overflow(a.value_, b.value_, &sum))
    throw AlgebraError("arctic overflow in addition");
  return Arctic(sum);
}

std::string Arctic::to_string() const {
  switch (tag_) {
    case Tag::negative_infinity:
      return "-inf";
    case Tag::positive_infinity:
      return "inf";
    case Tag::finite:
      break;
  }
  return std::to_string(value_);
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

Probability::Probability(Rational value) : value_(std::move(value)) {
  if (value_ < 0 || value_ > 1)
    throw AlgebraError("probability " + wgcl::to_string(value_) +
                       " outside [0, 1]");
}

ExtRational::ExtRational(Rational value) : value_(std::move(value)) {
  if (value_ < 0)
    throw AlgebraError("negative value " + wgcl::to_string(value_) +
                       " in nonnegative rationals");
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_ || b.infinite_) return ExtRational::infinity();
  return ExtRational(a.value_ + b.value_);
}

ExtRational operator*(const Probability& p, const ExtRational& u) {
  if (p.value() == 0) return ExtRational();
  if (u.infinite_) return ExtRational::infinity();
  return ExtRational(p.value() * u.value_);
}

std::string ExtRational::to_string() const {
  return infinite_ ? "inf" : wgcl::to_string(value_);
}

std::string format_word(const Word& w) { return w.empty() ? "ε" : w; }

Language Language::unite(const Language& other) const {
  Words words = words_;
  words.insert(other.words_.begin(), other.words_.end());
  return Language(std::move(words));
}

Language Language::prepend(const Word& w) const {
  Words words;
  for (const auto& v : words_) words.insert(w + v);
  return Language(std::move(words));
}

bool Language::subset_of(const Language& other) const {
  return std::includes(other.words_.begin(), other.words_.end(),
                       words_.begin(), words_.end(), ShortLex{});
}

std::string Language::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& w : words_) {
    if (!first) out += ',';
    first = false;
    out += format_word(w);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Algebra

namespace {

[[noreturn]] void mismatch(const Algebra& alg, std::string_view what) {
  throw AlgebraError(std::string(what) + " is not an element of instance " +
                     alg.name());
}

template <typename T>
const T& as(const Algebra& alg, const Weight& a) {
  const T* p = a.get_if<T>();
  if (!p) mismatch(alg, "weight");
  return *p;
}

template <typename T>
const T& as(const Algebra& alg, const ModuleValue& u) {
  const T* p = u.get_if<T>();
  if (!p) mismatch(alg, "module value");
  return *p;
}

void check_alphabet(std::string_view alphabet) {
  if (alphabet.empty()) throw AlgebraError("empty alphabet");
  std::string seen;
  for (char c : alphabet) {
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')))
      throw AlgebraError("alphabet symbols must be ASCII letters");
    if (seen.find(c) != std::string::npos)
      throw AlgebraError("alphabet symbols must be distinct");
    seen += c;
  }
}

}  // namespace

Algebra Algebra::lang(std::string alphabet) {
  check_alphabet(alphabet);
  return Algebra(InstanceKind::lang, std::move(alphabet));
}

Algebra Algebra::omega_lang(std::string alphabet) {
  check_alphabet(alphabet);
  return Algebra(InstanceKind::omega_lang, std::move(alphabet));
}

Algebra Algebra::parse(std::string_view name) {
  if (name == "boolean") return boolean();
  if (name == "counting") return counting();
  if (name == "tropical") return tropical();
  if (name == "arctic") return arctic();
  if (name == "prob") return probability();
  if (name.starts_with("lang:")) return lang(std::string(name.substr(5)));
  if (name.starts_with("omegalang:"))
    return omega_lang(std::string(name.substr(10)));
  throw AlgebraError("unknown instance '" + std::string(name) + "'");
}

std::string Algebra::name() const {
  switch (kind_) {
    case InstanceKind::boolean:
      return "boolean";
    case InstanceKind::counting:
      return "counting";
    case InstanceKind::tropical:
      return "tropical";
    case InstanceKind::arctic:
      return "arctic";
    case InstanceKind::probability:
      return "prob";
    case InstanceKind::lang:
      return "lang:" + alphabet_;
    case InstanceKind::omega_lang:
      return "omegalang:" + alphabet_;
  }
  return "?";
}

bool Algebra::has_top() const { return kind_ != InstanceKind::lang; }

bool Algebra::commutative() const { return !word_monoid(); }

bool Algebra::embeddable() const {
  return kind_ == InstanceKind::counting || kind_ == InstanceKind::tropical ||
         kind_ == InstanceKind::arctic;
}

Weight Algebra::mon_one() const {
  switch (kind_) {
    case InstanceKind::boolean:
      return true;
    case InstanceKind::counting:
      return ExtNat(1);
    case InstanceKind::tropical:
      return ExtNat(0);
    case InstanceKind::arctic:
      return Arctic(0);
    case InstanceKind::probability:
      return Probability(1);
    case InstanceKind::lang:
    case InstanceKind::omega_lang:
      return Word{};
  }
  return {};
}

Weight Algebra::mon_zero() const {
  switch (kind_) {
    case InstanceKind::boolean:
      return false;
    case InstanceKind::counting:
      return ExtNat(0);
    case InstanceKind::tropical:
      return ExtNat::infinity();
    case InstanceKind::arctic:
      return Arctic::negative_infinity();
    case InstanceKind::probability:
      return Probability(0);
    case InstanceKind::lang:
    case InstanceKind::omega_lang:
      break;
  }
  throw AlgebraError("the word monoid of " + name() + " has no zero");
}

Weight Algebra::mon_mul(const Weight& a, const Weight& b) const {
  switch (kind_) {
    case InstanceKind::boolean:
      return as<bool>(*this, a) && as<bool>(*this, b);
    case InstanceKind::counting:
      return as<ExtNat>(*this, a) * as<ExtNat>(*this, b);
    case InstanceKind::tropical:
      return as<ExtNat>(*this, a) + as<ExtNat>(*this, b);
    case InstanceKind::arctic:
      return as<Arctic>(*this, a) + as<Arctic>(*this, b);
    case InstanceKind::probability:
      return as<Probability>(*this, a) * as<Probability>(*this, b);
    case InstanceKind::lang:
    case InstanceKind::omega_lang:
      return as<Word>(*this, a) + as<Word>(*this, b);
  }
  return {};
}

ModuleValue Algebra::mod_zero() const {
  switch (kind_) {
    case InstanceKind::boolean:
      return false;
    case InstanceKind::counting:
      return ExtNat(0);
    case InstanceKind::tropical:
      return ExtNat::infinity();
    case InstanceKind::arctic:
      return Arctic::negative_infinity();
    case InstanceKind::probability:
      return ExtRational();
    case InstanceKind::lang:
      return Language();
    case InstanceKind::omega_lang:
      return OmegaLanguage::empty(alphabet_);
  }
  return {};
}

ModuleValue Algebra::mod_one() const {
  switch (kind_) {
    case InstanceKind::boolean:
      return true;
    case InstanceKind::counting:
      return ExtNat(1);
    case InstanceKind::tropical:
      return ExtNat(0);
    case InstanceKind::arctic:
      return Arctic(0);
    case InstanceKind::probability:
      return ExtRational(1);
    case InstanceKind::lang:
      return Language({Word{}});
    case InstanceKind::omega_lang:
      return OmegaLanguage(alphabet_, {Word{}}, {}, {});
  }
  return {};
}

ModuleValue Algebra::mod_add(const ModuleValue& u, const ModuleValue& v) const {
  switch (kind_) {
    case InstanceKind::boolean:
      return as<bool>(*this, u) || as<bool>(*this, v);
    case InstanceKind::counting:
      return as<ExtNat>(*this, u) + as<ExtNat>(*this, v);
    case InstanceKind::tropical:
      return std::min(as<ExtNat>(*this, u), as<ExtNat>(*this, v));
    case InstanceKind::arctic:
      return std::max(as<Arctic>(*this, u), as<Arctic>(*this, v));
    case InstanceKind::probability:
      return as<ExtRational>(*this, u) + as<ExtRational>(*this, v);
    case InstanceKind::lang:
      return as<Language>(*this, u).unite(as<Language>(*this, v));
    case InstanceKind::omega_lang: {
      const auto& a = as<OmegaLanguage>(*this, u);
      const auto& b = as<OmegaLanguage>(*this, v);
      if (a.alphabet() != alphabet_ || b.alphabet() != alphabet_)
        mismatch(*this, "language over another alphabet");
      return a.unite(b);
    }
  }
  return {};
}

ModuleValue Algebra::scalar_mul(const Weight& a, const ModuleValue& u) const {
  switch (kind_) {
    case InstanceKind::boolean:
      return as<bool>(*this, a) && as<bool>(*this, u);
    case InstanceKind::counting:
      return as<ExtNat>(*this, a) * as<ExtNat>(*this, u);
    case InstanceKind::tropical:
      return as<ExtNat>(*this, a) + as<ExtNat>(*this, u);
    case InstanceKind::arctic:
      return as<Arctic>(*this, a) + as<Arctic>(*this, u);
    case InstanceKind::probability:
      return as<Probability>(*this, a) * as<ExtRational>(*this, u);
    case InstanceKind::lang:
      return as<Language>(*this, u).prepend(as<Word>(*this, a));
    case InstanceKind::omega_lang: {
      const auto& l = as<OmegaLanguage>(*this, u);
      if (l.alphabet() != alphabet_)
        mismatch(*this, "language over another alphabet");
      return l.prepend(as<Word>(*this, a));
    }
  }
  return {};
}

bool Algebra::nat_leq(const ModuleValue& u, const ModuleValue& v) const {
  switch (kind_) {
    case InstanceKind::boolean:
      return !as<bool>(*this, u) || as<bool>(*this, v);
    case InstanceKind::counting:
      return as<ExtNat>(*this, u) <= as<ExtNat>(*this, v);
    case InstanceKind::tropical:
      return as<ExtNat>(*this, u) >= as<ExtNat>(*this, v);
    case InstanceKind::arctic:
      return as<Arctic>(*this, u) <= as<Arctic>(*this, v);
    case InstanceKind::probability:
      return as<ExtRational>(*this, u) <= as<ExtRational>(*this, v);
    case InstanceKind::lang:
      return as<Language>(*this, u).subset_of(as<Language>(*this, v));
    case InstanceKind::omega_lang:
      return as<OmegaLanguage>(*this, u).subset_of(
          as<OmegaLanguage>(*this, v));
  }
  return false;
}

ModuleValue Algebra::top() const {
  switch (kind_) {
    case InstanceKind::boolean:
      return true;
    case InstanceKind::counting:
      return ExtNat::infinity();
    case InstanceKind::tropical:
      return ExtNat(0);
    case InstanceKind::arctic:
      return Arctic::positive_infinity();
    case InstanceKind::probability:
      return ExtRational::infinity();
    case InstanceKind::omega_lang:
      return OmegaLanguage::full(alphabet_);
    case InstanceKind::lang:
      break;
  }
  throw AlgebraError("no top element in instance " + name());
}

SumResult Algebra::big_add(std::span<const ModuleValue> values) const {
  ModuleValue sum = mod_zero();
  for (const auto& v : values) sum = mod_add(sum, v);
  return {std::move(sum), true};
}

SumResult Algebra::big_add(
    const std::function<std::optional<ModuleValue>()>& next, std::size_t fuel,
    std::size_t window) const {
  ModuleValue sum = mod_zero();
  std::size_t unchanged = 1;
  for (std::size_t i = 0; i < fuel; ++i) {
    auto value = next();
    if (!value) return {std::move(sum), true};
    ModuleValue updated = mod_add(sum, *value);
    unchanged = updated == sum ? unchanged + 1 : 1;
    sum = std::move(updated);
  }
  // One more element may reveal that the sequence was exactly fuel long.
  if (!next()) return {std::move(sum), true};
  return {std::move(sum), window > 0 && unchanged >= window};
}

Weight Algebra::embed_weight(std::int64_t n) const {
  if (!embeddable())
    throw EvalError("integers do not embed into instance " + name());
  if (n < 0)
    throw EvalError("negative value " + std::to_string(n) +
                    " cannot be embedded into ℕ∞");
  auto v = static_cast<std::uint64_t>(n);
  if (kind_ == InstanceKind::arctic) return Arctic(v);
  return ExtNat(v);
}

ModuleValue Algebra::embed_module(std::int64_t n) const {
  if (!embeddable())
    throw EvalError("integers do not embed into instance " + name());
  if (n < 0)
    throw EvalError("negative value " + std::to_string(n) +
                    " cannot be embedded into ℕ∞");
  auto v = static_cast<std::uint64_t>(n);
  if (kind_ == InstanceKind::arctic) return Arctic(v);
  return ExtNat(v);
}

bool Algebra::annihilates(const Weight& a) const {
  if (word_monoid()) return false;
  return a == mon_zero();
}

void Algebra::check(const Weight& a) const {
  switch (kind_) {
    case InstanceKind::boolean:
      as<bool>(*this, a);
      return;
    case InstanceKind::counting:
    case InstanceKind::tropical:
      as<ExtNat>(*this, a);
      return;
    case InstanceKind::arctic:
      as<Arctic>(*this, a);
      return;
    case InstanceKind::probability:
      as<Probability>(*this, a);
      return;
    case InstanceKind::lang:
    case InstanceKind::omega_lang:
      make_word(as<Word>(*this, a));
      return;
  }
}

void Algebra::check(const ModuleValue& u) const {
  switch (kind_) {
    case InstanceKind::boolean:
      as<bool>(*this, u);
      return;
    case InstanceKind::counting:
    case InstanceKind::tropical:
      as<ExtNat>(*this, u);
      return;
    case InstanceKind::arctic:
      as<Arctic>(*this, u);
      return;
    case InstanceKind::probability:
      as<ExtRational>(*this, u);
      return;
    case InstanceKind::lang:
      for (const auto& w : as<Language>(*this, u).words()) make_word(w);
      return;
    case InstanceKind::omega_lang:
      if (as<OmegaLanguage>(*this, u).alphabet() != alphabet_)
        mismatch(*this, "language over another alphabet");
      return;
  }
}

Word Algebra::make_word(std::string_view text) const {
  if (!word_monoid())
    throw AlgebraError("instance " + name() + " has no words");
  for (char c : text)
    if (alphabet_.find(c) == std::string::npos)
      throw AlgebraError("symbol '" + std::string(1, c) +
                         "' is not in the alphabet of " + name());
  return Word(text);
}

std::string Algebra::format(const Weight& a) const {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>)
          return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, Probability>)
          return wgcl::to_string(x.value());
        else if constexpr (std::is_same_v<T, Word>)
          return format_word(x);
        else
          return x.to_string();
      },
      a.repr());
}

std::string Algebra::format(const ModuleValue& u) const {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>)
          return x ? "true" : "false";
        else
          return x.to_string();
      },
      u.repr());
}

}  // namespace wgcl
