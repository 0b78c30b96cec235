#include "wgcl/omega_language.hpp"

#include <algorithm>

#include "wgcl/error.hpp"

namespace wgcl {

namespace {

bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = w[i] == w[i - d];
    if (periodic) return w.substr(0, d);
  }
  return w;
}

void check_symbols(const std::string& alphabet, const Word& w) {
  for (char c : w)
    if (alphabet.find(c) == std::string::npos)
      throw AlgebraError("symbol '" + std::string(1, c) +
                         "' is not in the alphabet {" + alphabet + "}");
}

}  // namespace

Lasso Lasso::canonical(Word prefix, Word period) {
  if (period.empty()) throw AlgebraError("lasso with empty period");
  period = primitive_root(period);
  while (!prefix.empty() && prefix.back() == period.back()) {
    prefix.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  return Lasso{std::move(prefix), std::move(period)};
}

Word Lasso::expand(std::size_t n) const {
  Word out = prefix.substr(0, n);
  while (out.size() < n) out += period[(out.size() - prefix.size()) % period.size()];
  return out;
}

OmegaLanguage::OmegaLanguage(std::string alphabet, Words finite, Lassos lassos,
                             Words cylinders)
    : alphabet_(std::move(alphabet)),
      finite_(std::move(finite)),
      cylinders_(std::move(cylinders)) {
  for (const auto& l : lassos) lassos_.insert(Lasso::canonical(l.prefix, l.period));
  for (const auto& w : finite_) check_symbols(alphabet_, w);
  for (const auto& w : cylinders_) check_symbols(alphabet_, w);
  for (const auto& l : lassos_) {
    check_symbols(alphabet_, l.prefix);
    check_symbols(alphabet_, l.period);
  }
  canonicalize();
}

OmegaLanguage OmegaLanguage::full(std::string alphabet) {
  return OmegaLanguage(std::move(alphabet), {}, {}, {Word{}});
}

bool OmegaLanguage::covered_by_cylinder(const Word& w) const {
  for (std::size_t k = 0; k <= w.size(); ++k)
    if (cylinders_.count(w.substr(0, k))) return true;
  return false;
}

void OmegaLanguage::canonicalize() {
  for (bool merged = true; merged;) {
    merged = false;
    // Drop cylinders below other cylinders.
    for (auto it = cylinders_.begin(); it != cylinders_.end();) {
      bool below = false;
      for (std::size_t k = 0; k < it->size() && !below; ++k)
        below = cylinders_.count(it->substr(0, k)) > 0;
      it = below ? cylinders_.erase(it) : std::next(it);
    }
    std::erase_if(finite_,
                  [this](const Word& w) { return covered_by_cylinder(w); });
    std::erase_if(lassos_, [this](const Lasso& l) {
      for (const auto& c : cylinders_)
        if (l.expand(c.size()) == c) return true;
      return false;
    });
    if (alphabet_.empty()) break;
    for (const auto& w : finite_) {
      bool complete = true;
      for (char a : alphabet_)
        if (!cylinders_.count(w + a)) {
          complete = false;
          break;
        }
      if (complete) {
        Word merged_prefix = w;
        for (char a : alphabet_) cylinders_.erase(merged_prefix + a);
        finite_.erase(merged_prefix);
        cylinders_.insert(merged_prefix);
        merged = true;
        break;
      }
    }
  }
}

OmegaLanguage OmegaLanguage::unite(const OmegaLanguage& other) const {
  Words finite = finite_;
  finite.insert(other.finite_.begin(), other.finite_.end());
  Lassos lassos = lassos_;
  lassos.insert(other.lassos_.begin(), other.lassos_.end());
  Words cylinders = cylinders_;
  cylinders.insert(other.cylinders_.begin(), other.cylinders_.end());
  return OmegaLanguage(alphabet_, std::move(finite), std::move(lassos),
                       std::move(cylinders));
}

OmegaLanguage OmegaLanguage::prepend(const Word& w) const {
  Words finite;
  for (const auto& v : finite_) finite.insert(w + v);
  Lassos lassos;
  for (const auto& l : lassos_) lassos.insert(Lasso{w + l.prefix, l.period});
  Words cylinders;
  for (const auto& c : cylinders_) cylinders.insert(w + c);
  return OmegaLanguage(alphabet_, std::move(finite), std::move(lassos),
                       std::move(cylinders));
}

bool OmegaLanguage::contains_word(const Word& w) const {
  return finite_.count(w) > 0 || covered_by_cylinder(w);
}

bool OmegaLanguage::contains_lasso(const Lasso& l) const {
  Lasso c = Lasso::canonical(l.prefix, l.period);
  if (lassos_.count(c)) return true;
  for (const auto& p : cylinders_)
    if (is_prefix(p, c.expand(p.size()))) return true;
  return false;
}

bool OmegaLanguage::subset_of(const OmegaLanguage& other) const {
  for (const auto& w : finite_)
    if (!other.contains_word(w)) return false;
  for (const auto& l : lassos_)
    if (!other.contains_lasso(l)) return false;
  for (const auto& c : cylinders_)
    if (!other.covered_by_cylinder(c)) return false;
  return true;
}

std::string OmegaLanguage::to_string() const {
  std::string out = "{";
  bool first = true;
  auto sep = [&] {
    if (!first) out += ',';
    first = false;
  };
  for (const auto& w : finite_) {
    sep();
    out += format_word(w);
  }
  for (const auto& l : lassos_) {
    sep();
    out += l.prefix + "(" + l.period + ")^ω";
  }
  for (const auto& c : cylinders_) {
    sep();
    out += c + "Σ^∞";
  }
  return out + "}";
}

}  // namespace wgcl
