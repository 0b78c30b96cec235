#include "wgcl/parser.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <set>

namespace wgcl {

namespace {

// cpp_int reads a leading 0 as an octal prefix.
boost::multiprecision::cpp_int decimal(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return boost::multiprecision::cpp_int(std::string(digits.substr(first)));
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { ident, number, symbol, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

// Non-ASCII symbols with an ASCII spelling; everything else above 0x7f may
// appear in identifiers.
constexpr std::array<std::pair<std::string_view, std::string_view>, 12>
    kUnicodeSymbols{{{"⊕", "(+)"},
                     {"⊗", "(*)"},
                     {"≤", "<="},
                     {"≥", ">="},
                     {"≠", "!="},
                     {"∧", "and"},
                     {"∨", "or"},
                     {"¬", "not"},
                     {"ε", "ε"},
                     {"ω", "ω"},
                     {"∞", "∞"},
                     {"Σ", "Σ"}}};

constexpr std::array<std::string_view, 10> kLongSymbols{
    "(+)", "(*)", ":=", "==", "!=", "<=", ">=", "&&", "||", ".."};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blanks();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    out.push_back({Tok::end, "end of input", line_, column_});
    return out;
  }

 private:
  static bool ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c >= 0x80;
  }

  std::optional<std::pair<std::string_view, std::string_view>> unicode_at(
      std::size_t pos) const {
    for (const auto& entry : kUnicodeSymbols)
      if (text_.substr(pos).starts_with(entry.first)) return entry;
    return std::nullopt;
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i, ++pos_) {
      unsigned char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        column_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++column_;
      }
    }
  }

  void skip_blanks() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        advance(1);
      } else if (text_.substr(pos_).starts_with("//")) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  std::size_t ident_end(std::size_t pos) const {
    while (pos < text_.size()) {
      unsigned char c = text_[pos];
      if (!(ident_start(c) || std::isdigit(c)) || unicode_at(pos)) break;
      ++pos;
    }
    return pos;
  }

  Token next() {
    const std::size_t line = line_, column = column_;
    const unsigned char c = text_[pos_];
    if (auto u = unicode_at(pos_)) {
      advance(u->first.size());
      return {Tok::symbol, std::string(u->second), line, column};
    }
    if (ident_start(c)) {
      std::size_t end = ident_end(pos_);
      // `l[i]` is one identifier.
      if (end < text_.size() && text_[end] == '[') {
        std::size_t inner = end + 1;
        std::size_t inner_end = ident_end(inner);
        if (inner_end > inner && inner_end < text_.size() &&
            text_[inner_end] == ']')
          end = inner_end + 1;
      }
      std::string word(text_.substr(pos_, end - pos_));
      advance(end - pos_);
      return {Tok::ident, std::move(word), line, column};
    }
    if (std::isdigit(c)) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end])))
        ++end;
      if (end + 1 < text_.size() && text_[end] == '.' &&
          std::isdigit(static_cast<unsigned char>(text_[end + 1]))) {
        ++end;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end])))
          ++end;
      }
      std::string number(text_.substr(pos_, end - pos_));
      advance(end - pos_);
      return {Tok::number, std::move(number), line, column};
    }
    for (auto sym : kLongSymbols) {
      if (text_.substr(pos_).starts_with(sym)) {
        advance(sym.size());
        std::string s(sym);
        if (s == "==") s = "=";
        if (s == "&&") s = "and";
        if (s == "||") s = "or";
        return {Tok::symbol, std::move(s), line, column};
      }
    }
    if (std::string_view(";{}[](),+-*/<>=!^").find(static_cast<char>(c)) !=
        std::string_view::npos) {
      advance(1);
      std::string s(1, static_cast<char>(c));
      if (s == "!") s = "not";
      return {Tok::symbol, std::move(s), line, column};
    }
    throw ParseError("unexpected character '" + std::string(1, static_cast<char>(c)) + "'",
                     line, column);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

const std::set<std::string, std::less<>> kKeywords{
    "if",  "else", "while", "skip", "weigh", "true", "false", "and", "or",
    "not", "min",  "max",   "fib",  "int",   "zero", "one",   "top", "inf",
    "eps"};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Algebra* alg)
      : tokens_(std::move(tokens)), alg_(alg) {
    for (const auto& t : tokens_)
      if (t.kind == Tok::ident) names_.insert(t.text);
  }

  void set_algebra(const Algebra* alg) { alg_ = alg; }

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at(std::string_view text, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind != Tok::number && t.kind != Tok::end && t.text == text;
  }
  bool accept(std::string_view text) {
    if (!at(text)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    throw ParseError(message, t.line, t.column);
  }
  void expect(std::string_view text) {
    if (!accept(text))
      fail("expected '" + std::string(text) + "' but found '" + peek().text + "'");
  }
  void expect_end() {
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
  }

  // Runs `alternative`; on failure rewinds and returns nothing, keeping the
  // error that got furthest for reporting.
  template <typename F>
  auto attempt(F&& alternative) -> std::optional<decltype(alternative())> {
    const std::size_t saved = pos_;
    try {
      return alternative();
    } catch (const ParseError& e) {
      if (!furthest_ || e.line() > furthest_->line() ||
          (e.line() == furthest_->line() && e.column() > furthest_->column()))
        furthest_ = e;
      pos_ = saved;
      return std::nullopt;
    }
  }
  [[noreturn]] void fail_furthest(const std::string& fallback) const {
    if (furthest_) throw *furthest_;
    fail(fallback);
  }

  const Algebra& alg() const { return *alg_; }

  // ---- arithmetic ------------------------------------------------------

  std::string identifier() {
    const Token& t = peek();
    if (t.kind != Tok::ident || kKeywords.count(t.text))
      fail("expected a variable but found '" + t.text + "'");
    ++pos_;
    return t.text;
  }

  std::int64_t integer_literal(const Token& t, bool negative) {
    std::int64_t value = 0;
    std::string text = negative ? "-" + t.text : t.text;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw ParseError("invalid integer '" + text + "'", t.line, t.column);
    return value;
  }

  ArithPtr arith() {
    ArithPtr e = product();
    for (;;) {
      if (accept("+"))
        e = arith_binary(ArithExpr::Kind::add, e, product());
      else if (accept("-"))
        e = arith_binary(ArithExpr::Kind::sub, e, product());
      else
        return e;
    }
  }

  ArithPtr product() {
    ArithPtr e = unary();
    while (accept("*")) e = arith_binary(ArithExpr::Kind::mul, e, unary());
    return e;
  }

  ArithPtr unary() {
    if (accept("-")) {
      if (peek().kind == Tok::number) {
        const Token t = peek();
        ++pos_;
        return arith_const(integer_literal(t, true));
      }
      return arith_unary(ArithExpr::Kind::neg, unary());
    }
    return arith_primary();
  }

  ArithPtr arith_primary() {
    const Token t = peek();
    if (t.kind == Tok::number) {
      ++pos_;
      return arith_const(integer_literal(t, false));
    }
    if (accept("(")) {
      ArithPtr e = arith();
      expect(")");
      return e;
    }
    for (auto [name, kind] : {std::pair{"min", ArithExpr::Kind::min},
                              std::pair{"max", ArithExpr::Kind::max}}) {
      if (accept(name)) {
        expect("(");
        ArithPtr a = arith();
        expect(",");
        ArithPtr b = arith();
        expect(")");
        return arith_binary(kind, a, b);
      }
    }
    if (accept("fib")) {
      expect("(");
      ArithPtr a = arith();
      expect(")");
      return arith_unary(ArithExpr::Kind::fib, a);
    }
    return arith_var(identifier());
  }

  // ---- guards ----------------------------------------------------------

  BoolPtr disjunction() {
    BoolPtr b = conjunction();
    while (accept("or")) b = bool_or(b, conjunction());
    return b;
  }

  BoolPtr conjunction() {
    BoolPtr b = negation();
    while (accept("and")) b = bool_and(b, negation());
    return b;
  }

  BoolPtr negation() {
    if (accept("not")) return bool_not(negation());
    return bool_atom();
  }

  BoolPtr bool_atom() {
    if (accept("true")) return bool_const(true);
    if (accept("false")) return bool_const(false);
    if (at("(")) {
      if (auto cmp = attempt([&] { return comparison(); })) return *cmp;
      if (auto nested = attempt([&] {
            expect("(");
            BoolPtr b = disjunction();
            expect(")");
            return b;
          }))
        return *nested;
      fail_furthest("malformed condition");
    }
    return comparison();
  }

  BoolPtr comparison() {
    ArithPtr left = arith();
    static const std::array<std::pair<std::string_view, CmpOp>, 6> ops{{
        {"=", CmpOp::eq},
        {"!=", CmpOp::ne},
        {"<=", CmpOp::le},
        {">=", CmpOp::ge},
        {"<", CmpOp::lt},
        {">", CmpOp::gt},
    }};
    for (auto [text, op] : ops)
      if (accept(text)) return bool_compare(op, left, arith());
    fail("expected a comparison operator but found '" + peek().text + "'");
  }

  // ---- weights ---------------------------------------------------------

  struct ParsedWeight {
    WeightExprPtr weight;
    ArithPtr exponent;  // variable exponent of a word power
  };

  Rational rational_literal() {
    const Token t = peek();
    if (t.kind != Tok::number) fail("expected a number but found '" + t.text + "'");
    ++pos_;
    Rational value;
    auto dot = t.text.find('.');
    if (dot == std::string::npos) {
      value = Rational(decimal(t.text));
    } else {
      std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
      boost::multiprecision::cpp_int scale = 1;
      for (std::size_t i = dot + 1; i < t.text.size(); ++i) scale *= 10;
      value = Rational(decimal(digits), scale);
    }
    if (accept("/")) {
      const Token d = peek();
      if (d.kind != Tok::number || d.text.find('.') != std::string::npos)
        fail("expected an integer denominator");
      ++pos_;
      boost::multiprecision::cpp_int den = decimal(d.text);
      if (den == 0) throw ParseError("division by zero", d.line, d.column);
      value /= Rational(den);
    }
    return value;
  }

  std::uint64_t natural_literal() {
    const Token t = peek();
    if (t.kind != Tok::number || t.text.find('.') != std::string::npos)
      fail("expected a natural number but found '" + t.text + "'");
    ++pos_;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      throw ParseError("invalid number '" + t.text + "'", t.line, t.column);
    return value;
  }

  Word word(const Token& t) {
    try {
      return alg().make_word(t.text);
    } catch (const AlgebraError& e) {
      throw ParseError(e.what(), t.line, t.column);
    }
  }

  ParsedWeight weight_expr(bool allow_power) {
    const Token start = peek();
    if (accept("int")) {
      if (!alg().embeddable())
        throw ParseError("int(...) needs an instance with an integer embedding",
                         start.line, start.column);
      expect("(");
      ArithPtr e = arith();
      expect(")");
      return {weight_embed(e), nullptr};
    }
    if (accept("one")) return {weight_literal(alg().mon_one()), nullptr};
    if (accept("zero")) {
      if (alg().word_monoid())
        throw ParseError("the word monoid has no zero", start.line, start.column);
      return {weight_literal(alg().mon_zero()), nullptr};
    }
    try {
      switch (alg().kind()) {
        case InstanceKind::boolean:
          if (accept("true")) return {weight_literal(true), nullptr};
          if (accept("false")) return {weight_literal(false), nullptr};
          {
            auto n = natural_literal();
            if (n > 1) fail("Boolean weights are 0 or 1");
            return {weight_literal(n == 1), nullptr};
          }
        case InstanceKind::counting:
        case InstanceKind::tropical:
          if (accept("inf")) return {weight_literal(ExtNat::infinity()), nullptr};
          return {weight_literal(ExtNat(natural_literal())), nullptr};
        case InstanceKind::arctic:
          if (accept("inf")) return {weight_literal(Arctic::positive_infinity()), nullptr};
          if (at("-") && at("inf", 1)) {
            pos_ += 2;
            return {weight_literal(Arctic::negative_infinity()), nullptr};
          }
          return {weight_literal(Arctic(natural_literal())), nullptr};
        case InstanceKind::probability:
          return {weight_literal(Probability(rational_literal())), nullptr};
        case InstanceKind::lang:
        case InstanceKind::omega_lang:
          break;
      }
    } catch (const AlgebraError& e) {
      throw ParseError(e.what(), start.line, start.column);
    }
    // Words.
    Word w;
    if (accept("ε") || accept("eps")) {
      w = Word{};
    } else {
      const Token t = peek();
      if (t.kind != Tok::ident || kKeywords.count(t.text))
        fail("expected a word but found '" + t.text + "'");
      ++pos_;
      w = word(t);
    }
    if (!allow_power || !accept("^")) return {weight_literal(w), nullptr};
    if (peek().kind == Tok::number) {
      std::uint64_t n = natural_literal();
      if (n > 4096) fail("word power too large");
      Word repeated;
      for (std::uint64_t i = 0; i < n; ++i) repeated += w;
      return {weight_literal(repeated), nullptr};
    }
    ArithPtr exponent = at("(") ? arith_primary() : arith_var(identifier());
    return {weight_literal(w), exponent};
  }

  // ---- weightings ------------------------------------------------------

  WeightingExprPtr weighting() {
    WeightingExprPtr f = weighting_term();
    while (accept("(+)")) f = weighting_sum(f, weighting_term());
    return f;
  }

  WeightingExprPtr weighting_term() {
    if (accept("[")) {
      BoolPtr guard = disjunction();
      expect("]");
      return weighting_guard(guard, weighting_term());
    }
    if (auto scaled = attempt([&] {
          ParsedWeight w = weight_expr(false);
          expect("(*)");
          return weighting_scale(w.weight, weighting_term());
        }))
      return *scaled;
    return weighting_primary();
  }

  WeightingExprPtr module_literal(const ModuleValue& u) {
    return weighting_literal(u);
  }

  WeightingExprPtr weighting_primary() {
    const Token start = peek();
    if (accept("zero")) return weighting_zero();
    if (accept("one")) return weighting_one();
    if (accept("top")) {
      if (!alg().has_top())
        throw ParseError("no top element in instance " + alg().name(),
                         start.line, start.column);
      return weighting_top();
    }
    if (accept("int")) {
      if (!alg().embeddable())
        throw ParseError("int(...) needs an instance with an integer embedding",
                         start.line, start.column);
      expect("(");
      ArithPtr e = arith();
      expect(")");
      return weighting_embed(e);
    }
    if (at("{") && alg().word_monoid()) return module_literal(language_literal());
    if (at("(")) {
      if (alg().embeddable())
        if (auto e = attempt([&] { return arith(); }))
          if (!at("(*)")) return weighting_embed(*e);
      if (auto nested = attempt([&] {
            expect("(");
            WeightingExprPtr f = weighting();
            expect(")");
            return f;
          }))
        return *nested;
      fail_furthest("malformed weighting");
    }
    try {
      switch (alg().kind()) {
        case InstanceKind::boolean:
          if (accept("true")) return module_literal(true);
          if (accept("false")) return module_literal(false);
          break;
        case InstanceKind::counting:
        case InstanceKind::tropical:
          if (accept("inf")) return module_literal(ExtNat::infinity());
          return weighting_embed(arith());
        case InstanceKind::arctic:
          if (accept("inf")) return module_literal(Arctic::positive_infinity());
          if (at("-") && at("inf", 1)) {
            pos_ += 2;
            return module_literal(Arctic::negative_infinity());
          }
          return weighting_embed(arith());
        case InstanceKind::probability:
          if (accept("inf")) return module_literal(ExtRational::infinity());
          return module_literal(ExtRational(rational_literal()));
        case InstanceKind::lang:
        case InstanceKind::omega_lang:
          break;
      }
    } catch (const AlgebraError& e) {
      throw ParseError(e.what(), start.line, start.column);
    }
    fail("expected a weighting but found '" + start.text + "'");
  }

  std::optional<Word> optional_word() {
    if (accept("ε") || accept("eps")) return Word{};
    const Token t = peek();
    if (t.kind == Tok::ident && !kKeywords.count(t.text)) {
      ++pos_;
      return word(t);
    }
    return std::nullopt;
  }

  ModuleValue language_literal() {
    const Token start = peek();
    expect("{");
    OmegaLanguage::Words finite, cylinders;
    OmegaLanguage::Lassos lassos;
    const bool omega = alg().kind() == InstanceKind::omega_lang;
    if (!accept("}")) {
      do {
        const Token item = peek();
        Word prefix = optional_word().value_or(Word{});
        if (accept("(")) {
          auto period = optional_word();
          if (!period || period->empty()) fail("expected a nonempty period");
          expect(")");
          expect("^");
          if (!(accept("ω") || accept("w") || accept("omega")))
            fail("expected ω after '^'");
          if (!omega)
            throw ParseError("infinite words need an omegalang instance",
                             item.line, item.column);
          lassos.insert(Lasso{prefix, *period});
        } else if (accept("Σ")) {
          expect("^");
          if (!(accept("∞") || accept("inf"))) fail("expected ∞ after 'Σ^'");
          if (!omega)
            throw ParseError("infinite words need an omegalang instance",
                             item.line, item.column);
          cylinders.insert(prefix);
        } else {
          if (item.kind == Tok::symbol && item.text != "ε")
            fail("expected a word but found '" + item.text + "'");
          finite.insert(prefix);
        }
      } while (accept(","));
      expect("}");
    }
    try {
      if (!omega) return Language(std::move(finite));
      return OmegaLanguage(alg().alphabet(), std::move(finite), std::move(lassos),
                           std::move(cylinders));
    } catch (const AlgebraError& e) {
      throw ParseError(e.what(), start.line, start.column);
    }
  }

  // ---- programs --------------------------------------------------------

  ProgramPtr program() {
    ProgramPtr first = statement();
    if (accept(";")) {
      if (at("}") || peek().kind == Tok::end) return first;
      return make_seq(first, program());
    }
    return first;
  }

  ProgramPtr block() {
    expect("{");
    if (accept("}")) return make_skip(alg());
    ProgramPtr p = program();
    expect("}");
    return p;
  }

  std::string fresh_name() {
    for (std::size_t i = 0;; ++i) {
      std::string name = i == 0 ? "_i" : "_i" + std::to_string(i);
      if (names_.insert(name).second) return name;
    }
  }

  ProgramPtr statement() {
    const Token start = peek();
    if (accept("skip")) return make_skip(alg());
    if (accept("weigh")) {
      ParsedWeight w = weight_expr(true);
      if (!w.exponent) return make_weigh(w.weight);
      // weigh a^e  ==>  i := e; while (i > 0) { weigh a; i := i - 1 }
      std::string i = fresh_name();
      auto counter = arith_var(i);
      return make_seq(
          make_assign(i, w.exponent),
          make_while(bool_compare(CmpOp::gt, counter, arith_const(0)),
                     make_seq(make_weigh(w.weight),
                              make_assign(i, arith_binary(ArithExpr::Kind::sub,
                                                          counter,
                                                          arith_const(1))))));
    }
    if (accept("if")) return conditional();
    if (accept("while")) {
      expect("(");
      BoolPtr guard = disjunction();
      expect(")");
      return make_while(guard, block());
    }
    if (at("{")) return choice();
    if (start.kind == Tok::ident && at(":=", 1)) {
      std::string var = identifier();
      expect(":=");
      return make_assign(var, arith());
    }
    fail("expected a statement but found '" + start.text + "'");
  }

  ProgramPtr conditional() {
    expect("(");
    BoolPtr guard = disjunction();
    expect(")");
    ProgramPtr then_branch = block();
    ProgramPtr else_branch;
    if (accept("else"))
      else_branch = accept("if") ? conditional() : block();
    else
      else_branch = make_skip(alg());
    return make_ite(guard, then_branch, else_branch);
  }

  ProgramPtr choice() {
    ProgramPtr left = block();
    if (at("[") && at("]", 1)) {
      pos_ += 2;
      return make_branch(left, choice());
    }
    if (accept("[")) {
      WeightExprPtr a = weight_expr(false).weight;
      expect("]");
      expect("(+)");
      expect("[");
      WeightExprPtr b = weight_expr(false).weight;
      expect("]");
      ProgramPtr right = block();
      return make_branch(make_seq(make_weigh(a), left),
                         make_seq(make_weigh(b), right));
    }
    return left;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Algebra* alg_;
  std::set<std::string> names_;
  std::optional<ParseError> furthest_;
};

Algebra instance_from(const std::string& name, const Token& at) {
  try {
    return Algebra::parse(name);
  } catch (const AlgebraError& e) {
    throw ParseError(e.what(), at.line, at.column);
  }
}

}  // namespace

ParsedProgram parse_program(std::string_view text,
                            const std::optional<Algebra>& instance) {
  // The pragma holds `:` which the lexer would split, so it is read by hand.
  std::string body(text);
  std::optional<std::string> pragma;
  std::size_t first = body.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && body.compare(first, 9, "@instance") == 0) {
    std::size_t eol = body.find('\n', first);
    std::string line = body.substr(first + 9, eol == std::string::npos
                                                  ? std::string::npos
                                                  : eol - first - 9);
    auto b = line.find_first_not_of(" \t\r");
    auto e = line.find_last_not_of(" \t\r");
    if (b == std::string::npos)
      throw ParseError("expected an instance name after @instance", 1, 10);
    pragma = line.substr(b, e - b + 1);
    // Blank out the pragma so positions in the rest stay correct.
    for (std::size_t i = first; i < (eol == std::string::npos ? body.size() : eol); ++i)
      body[i] = ' ';
  }
  Parser parser(Lexer(body).run(), nullptr);
  std::optional<Algebra> alg = instance;
  if (!alg) {
    if (!pragma)
      throw ParseError("missing '@instance <name>' pragma and no instance given",
                       1, 1);
    alg = instance_from(*pragma, parser.peek());
  }
  parser.set_algebra(&*alg);
  if (parser.peek().kind == Tok::end) parser.fail("empty program");
  ProgramPtr program = parser.program();
  parser.expect_end();
  return {*alg, program};
}

ArithPtr parse_arith(std::string_view text) {
  Parser parser(Lexer(text).run(), nullptr);
  ArithPtr e = parser.arith();
  parser.expect_end();
  return e;
}

BoolPtr parse_bool(std::string_view text) {
  Parser parser(Lexer(text).run(), nullptr);
  BoolPtr b = parser.disjunction();
  parser.expect_end();
  return b;
}

WeightingExprPtr parse_weighting(std::string_view text, const Algebra& alg) {
  Parser parser(Lexer(text).run(), &alg);
  WeightingExprPtr f = parser.weighting();
  parser.expect_end();
  return f;
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = text.find(sep, start);
    parts.emplace_back(text.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& text, std::string_view context) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("invalid integer '" + text + "' in " + std::string(context),
                     1, 1);
  return value;
}

std::pair<std::string, std::string> binding(const std::string& item,
                                            std::string_view context) {
  auto eq = item.find('=');
  if (eq == std::string::npos)
    throw ParseError("expected 'name=value' in " + std::string(context) +
                         " but found '" + item + "'",
                     1, 1);
  std::string name = trim(item.substr(0, eq));
  if (name.empty())
    throw ParseError("missing variable name in " + std::string(context), 1, 1);
  return {name, trim(item.substr(eq + 1))};
}

}  // namespace

State parse_state(std::string_view text) {
  State::Map values;
  if (trim(std::string(text)).empty()) return State();
  for (const auto& item : split(text, ',')) {
    auto [name, value] = binding(item, "state");
    if (values.count(name))
      throw ParseError("variable '" + name + "' given twice", 1, 1);
    values[name] = parse_int(value, "state");
  }
  return State(values);
}

Grid parse_grid(std::string_view text, std::size_t max_states) {
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> ranges;
  for (const auto& item : split(text, ',')) {
    auto [name, value] = binding(item, "grid");
    auto dots = value.find("..");
    std::int64_t lo, hi;
    if (dots == std::string::npos) {
      lo = hi = parse_int(value, "grid");
    } else {
      lo = parse_int(trim(value.substr(0, dots)), "grid");
      hi = parse_int(trim(value.substr(dots + 2)), "grid");
    }
    if (lo > hi) throw ParseError("empty range for '" + name + "'", 1, 1);
    if (!ranges.emplace(name, std::pair{lo, hi}).second)
      throw ParseError("variable '" + name + "' given twice", 1, 1);
  }
  Grid grid;
  double count = 1;
  for (const auto& [name, range] : ranges) {
    grid.vars.push_back(name);
    count *= static_cast<double>(range.second) - static_cast<double>(range.first) + 1;
  }
  if (count > static_cast<double>(max_states))
    throw Error("grid has " + std::to_string(static_cast<std::uint64_t>(count)) +
                " states, more than the limit of " + std::to_string(max_states));
  grid.states.push_back(State());
  for (auto it = ranges.rbegin(); it != ranges.rend(); ++it) {
    std::vector<State> expanded;
    for (std::int64_t v = it->second.first; v <= it->second.second; ++v)
      for (const auto& s : grid.states) expanded.push_back(s.updated(it->first, v));
    grid.states = std::move(expanded);
  }
  std::sort(grid.states.begin(), grid.states.end(), [&](const State& a, const State& b) {
    for (const auto& var : grid.vars)
      if (a.get(var) != b.get(var)) return a.get(var) < b.get(var);
    return false;
  });
  return grid;
}

}  // namespace wgcl
