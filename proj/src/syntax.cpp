#include "wgcl/syntax.hpp"

#include <array>
#include <functional>

namespace wgcl {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_of(const std::string& s) { return std::hash<std::string>{}(s); }

template <typename P>
std::size_t child_hash(const P& p) {
  return p ? p->hash : 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// State

State::State(std::initializer_list<Map::value_type> values) {
  for (const auto& [k, v] : values)
    if (v != 0) values_[k] = v;
  rehash();
}

State::State(const Map& values) {
  for (const auto& [k, v] : values)
    if (v != 0) values_[k] = v;
  rehash();
}

std::int64_t State::get(const std::string& var) const {
  auto it = values_.find(var);
  return it == values_.end() ? 0 : it->second;
}

State State::updated(const std::string& var, std::int64_t value) const {
  State s = *this;
  if (value == 0)
    s.values_.erase(var);
  else
    s.values_[var] = value;
  s.rehash();
  return s;
}

void State::rehash() {
  std::size_t h = 0x5a17;
  for (const auto& [k, v] : values_)
    h = mix(mix(h, hash_of(k)), std::hash<std::int64_t>{}(v));
  hash_ = h;
}

std::string State::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : values_) {
    if (!first) out += ", ";
    first = false;
    out += k + ":" + std::to_string(v);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Factories

ArithPtr arith_const(std::int64_t value) {
  auto e = std::make_shared<ArithExpr>();
  e->kind = ArithExpr::Kind::constant;
  e->value = value;
  e->hash = mix(1, std::hash<std::int64_t>{}(value));
  return e;
}

ArithPtr arith_var(std::string name) {
  auto e = std::make_shared<ArithExpr>();
  e->kind = ArithExpr::Kind::variable;
  e->hash = mix(2, hash_of(name));
  e->name = std::move(name);
  return e;
}

ArithPtr arith_binary(ArithExpr::Kind kind, ArithPtr lhs, ArithPtr rhs) {
  auto e = std::make_shared<ArithExpr>();
  e->kind = kind;
  e->hash = mix(mix(static_cast<std::size_t>(kind) + 16, lhs->hash), rhs->hash);
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

ArithPtr arith_unary(ArithExpr::Kind kind, ArithPtr operand) {
  auto e = std::make_shared<ArithExpr>();
  e->kind = kind;
  e->hash = mix(static_cast<std::size_t>(kind) + 16, operand->hash);
  e->lhs = std::move(operand);
  return e;
}

BoolPtr bool_const(bool value) {
  auto b = std::make_shared<BoolExpr>();
  b->kind = BoolExpr::Kind::constant;
  b->value = value;
  b->hash = value ? 101 : 100;
  return b;
}

BoolPtr bool_compare(CmpOp op, ArithPtr left, ArithPtr right) {
  auto b = std::make_shared<BoolExpr>();
  b->kind = BoolExpr::Kind::compare;
  b->cmp = op;
  b->hash = mix(mix(200 + static_cast<std::size_t>(op), left->hash), right->hash);
  b->left = std::move(left);
  b->right = std::move(right);
  return b;
}

namespace {

BoolPtr bool_node(BoolExpr::Kind kind, BoolPtr lhs, BoolPtr rhs) {
  auto b = std::make_shared<BoolExpr>();
  b->kind = kind;
  b->hash = mix(mix(300 + static_cast<std::size_t>(kind), lhs->hash),
                child_hash(rhs));
  b->lhs = std::move(lhs);
  b->rhs = std::move(rhs);
  return b;
}

}  // namespace

BoolPtr bool_and(BoolPtr lhs, BoolPtr rhs) {
  return bool_node(BoolExpr::Kind::conj, std::move(lhs), std::move(rhs));
}
BoolPtr bool_or(BoolPtr lhs, BoolPtr rhs) {
  return bool_node(BoolExpr::Kind::disj, std::move(lhs), std::move(rhs));
}
BoolPtr bool_not(BoolPtr operand) {
  return bool_node(BoolExpr::Kind::negation, std::move(operand), nullptr);
}

namespace {

std::size_t hash_weight(const Weight& w) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>)
          return x ? 11 : 10;
        else if constexpr (std::is_same_v<T, Word>)
          return hash_of(x);
        else if constexpr (std::is_same_v<T, Probability>)
          return hash_of(wgcl::to_string(x.value()));
        else
          return hash_of(x.to_string());
      },
      w.repr());
}

std::size_t hash_module(const ModuleValue& u) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>)
          return x ? 11 : 10;
        else
          return hash_of(x.to_string());
      },
      u.repr());
}

}  // namespace

WeightExprPtr weight_literal(Weight value) {
  auto w = std::make_shared<WeightExpr>();
  w->kind = WeightExpr::Kind::literal;
  w->hash = mix(400, hash_weight(value));
  w->literal = std::move(value);
  return w;
}

WeightExprPtr weight_embed(ArithPtr arith) {
  auto w = std::make_shared<WeightExpr>();
  w->kind = WeightExpr::Kind::embed;
  w->hash = mix(401, arith->hash);
  w->arith = std::move(arith);
  return w;
}

namespace {

std::shared_ptr<WeightingExpr> weighting_node(WeightingExpr::Kind kind) {
  auto f = std::make_shared<WeightingExpr>();
  f->kind = kind;
  f->hash = 500 + static_cast<std::size_t>(kind);
  return f;
}

}  // namespace

WeightingExprPtr weighting_zero() {
  return weighting_node(WeightingExpr::Kind::zero);
}
WeightingExprPtr weighting_one() {
  return weighting_node(WeightingExpr::Kind::one);
}
WeightingExprPtr weighting_top() {
  return weighting_node(WeightingExpr::Kind::top);
}

WeightingExprPtr weighting_literal(ModuleValue value) {
  auto f = weighting_node(WeightingExpr::Kind::literal);
  f->hash = mix(f->hash, hash_module(value));
  f->literal = std::move(value);
  return f;
}

WeightingExprPtr weighting_embed(ArithPtr arith) {
  auto f = weighting_node(WeightingExpr::Kind::embed);
  f->hash = mix(f->hash, arith->hash);
  f->arith = std::move(arith);
  return f;
}

WeightingExprPtr weighting_guard(BoolPtr guard, WeightingExprPtr body) {
  auto f = weighting_node(WeightingExpr::Kind::guard);
  f->hash = mix(mix(f->hash, guard->hash), body->hash);
  f->guard = std::move(guard);
  f->lhs = std::move(body);
  return f;
}

WeightingExprPtr weighting_sum(WeightingExprPtr lhs, WeightingExprPtr rhs) {
  auto f = weighting_node(WeightingExpr::Kind::sum);
  f->hash = mix(mix(f->hash, lhs->hash), rhs->hash);
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}

WeightingExprPtr weighting_scale(WeightExprPtr weight, WeightingExprPtr body) {
  auto f = weighting_node(WeightingExpr::Kind::scale);
  f->hash = mix(mix(f->hash, weight->hash), body->hash);
  f->weight = std::move(weight);
  f->lhs = std::move(body);
  return f;
}

namespace {

std::shared_ptr<Program> program_node(Program::Kind kind) {
  auto p = std::make_shared<Program>();
  p->kind = kind;
  return p;
}

std::size_t program_hash(const Program& p) {
  std::size_t h = 600 + static_cast<std::size_t>(p.kind);
  h = mix(h, hash_of(p.var));
  h = mix(h, child_hash(p.arith));
  h = mix(h, child_hash(p.guard));
  h = mix(h, child_hash(p.weight));
  h = mix(h, child_hash(p.first));
  return mix(h, child_hash(p.second));
}

ProgramPtr finish(std::shared_ptr<Program> p) {
  p->hash = program_hash(*p);
  return p;
}

}  // namespace

ProgramPtr make_assign(std::string var, ArithPtr value) {
  auto p = program_node(Program::Kind::assign);
  p->var = std::move(var);
  p->arith = std::move(value);
  return finish(std::move(p));
}

ProgramPtr make_seq(ProgramPtr first, ProgramPtr second) {
  auto p = program_node(Program::Kind::seq);
  p->first = std::move(first);
  p->second = std::move(second);
  return finish(std::move(p));
}

ProgramPtr make_ite(BoolPtr guard, ProgramPtr then_branch,
                    ProgramPtr else_branch) {
  auto p = program_node(Program::Kind::ite);
  p->guard = std::move(guard);
  p->first = std::move(then_branch);
  p->second = std::move(else_branch);
  return finish(std::move(p));
}

ProgramPtr make_while(BoolPtr guard, ProgramPtr body) {
  auto p = program_node(Program::Kind::loop);
  p->guard = std::move(guard);
  p->first = std::move(body);
  return finish(std::move(p));
}

ProgramPtr make_branch(ProgramPtr left, ProgramPtr right) {
  auto p = program_node(Program::Kind::branch);
  p->first = std::move(left);
  p->second = std::move(right);
  return finish(std::move(p));
}

ProgramPtr make_weigh(WeightExprPtr weight) {
  auto p = program_node(Program::Kind::weigh);
  p->weight = std::move(weight);
  return finish(std::move(p));
}

ProgramPtr make_skip(const Algebra& algebra) {
  return make_weigh(weight_literal(algebra.mon_one()));
}

// ---------------------------------------------------------------------------
// Structural equality

bool equal(const ArithPtr& a, const ArithPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->hash != b->hash || a->kind != b->kind) return false;
  return a->value == b->value && a->name == b->name && equal(a->lhs, b->lhs) &&
         equal(a->rhs, b->rhs);
}

bool equal(const BoolPtr& a, const BoolPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->hash != b->hash || a->kind != b->kind) return false;
  return a->value == b->value && a->cmp == b->cmp && equal(a->left, b->left) &&
         equal(a->right, b->right) && equal(a->lhs, b->lhs) &&
         equal(a->rhs, b->rhs);
}

bool equal(const WeightExprPtr& a, const WeightExprPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->hash != b->hash || a->kind != b->kind) return false;
  return a->literal == b->literal && equal(a->arith, b->arith);
}

bool equal(const WeightingExprPtr& a, const WeightingExprPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->hash != b->hash || a->kind != b->kind) return false;
  return a->literal == b->literal && equal(a->arith, b->arith) &&
         equal(a->guard, b->guard) && equal(a->weight, b->weight) &&
         equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

bool equal(const ProgramPtr& a, const ProgramPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->hash != b->hash || a->kind != b->kind) return false;
  return a->var == b->var && equal(a->arith, b->arith) &&
         equal(a->guard, b->guard) && equal(a->weight, b->weight) &&
         equal(a->first, b->first) && equal(a->second, b->second);
}

std::size_t program_size(const ProgramPtr& p) {
  if (!p) return 0;
  return 1 + program_size(p->first) + program_size(p->second);
}

// ---------------------------------------------------------------------------
// Evaluation

std::int64_t fib(std::int64_t n) {
  static const auto table = [] {
    std::array<std::int64_t, 93> t{};
    t[1] = 1;
    for (std::size_t i = 2; i < t.size(); ++i) t[i] = t[i - 1] + t[i - 2];
    return t;
  }();
  if (n < 0) return 0;
  if (n >= static_cast<std::int64_t>(table.size()))
    throw EvalError("fib(" + std::to_string(n) + ") exceeds 64 bits");
  return table[static_cast<std::size_t>(n)];
}

std::int64_t eval_arith(const ArithExpr& e, const State& s) {
  using K = ArithExpr::Kind;
  std::int64_t r = 0;
  switch (e.kind) {
    case K::constant:
      return e.value;
    case K::variable:
      return s.get(e.name);
    case K::add:
      if (__builtin_add_overflow(eval_arith(*e.lhs, s), eval_arith(*e.rhs, s), &r))
        throw EvalError("integer overflow in " + to_string(e));
      return r;
    case K::sub:
      if (__builtin_sub_overflow(eval_arith(*e.lhs, s), eval_arith(*e.rhs, s), &r))
        throw EvalError("integer overflow in " + to_string(e));
      return r;
    case K::mul:
      if (__builtin_mul_overflow(eval_arith(*e.lhs, s), eval_arith(*e.rhs, s), &r))
        throw EvalError("integer overflow in " + to_string(e));
      return r;
    case K::neg:
      if (__builtin_sub_overflow(std::int64_t{0}, eval_arith(*e.lhs, s), &r))
        throw EvalError("integer overflow in " + to_string(e));
      return r;
    case K::min:
      return std::min(eval_arith(*e.lhs, s), eval_arith(*e.rhs, s));
    case K::max:
      return std::max(eval_arith(*e.lhs, s), eval_arith(*e.rhs, s));
    case K::fib:
      return fib(eval_arith(*e.lhs, s));
  }
  return r;
}

bool eval_bool(const BoolExpr& b, const State& s) {
  using K = BoolExpr::Kind;
  switch (b.kind) {
    case K::constant:
      return b.value;
    case K::compare: {
      auto l = eval_arith(*b.left, s);
      auto r = eval_arith(*b.right, s);
      switch (b.cmp) {
        case CmpOp::eq: return l == r;
        case CmpOp::ne: return l != r;
        case CmpOp::lt: return l < r;
        case CmpOp::le: return l <= r;
        case CmpOp::gt: return l > r;
        case CmpOp::ge: return l >= r;
      }
      return false;
    }
    case K::conj:
      return eval_bool(*b.lhs, s) && eval_bool(*b.rhs, s);
    case K::disj:
      return eval_bool(*b.lhs, s) || eval_bool(*b.rhs, s);
    case K::negation:
      return !eval_bool(*b.lhs, s);
  }
  return false;
}

Weight eval_weight(const WeightExpr& w, const State& s, const Algebra& alg) {
  if (w.kind == WeightExpr::Kind::literal) return w.literal;
  return alg.embed_weight(eval_arith(*w.arith, s));
}

ModuleValue eval_weighting(const WeightingExpr& f, const State& s,
                           const Algebra& alg) {
  using K = WeightingExpr::Kind;
  switch (f.kind) {
    case K::zero:
      return alg.mod_zero();
    case K::one:
      return alg.mod_one();
    case K::top:
      return alg.top();
    case K::literal:
      return f.literal;
    case K::embed:
      return alg.embed_module(eval_arith(*f.arith, s));
    case K::guard:
      return eval_bool(*f.guard, s) ? eval_weighting(*f.lhs, s, alg)
                                    : alg.mod_zero();
    case K::sum:
      return alg.mod_add(eval_weighting(*f.lhs, s, alg),
                         eval_weighting(*f.rhs, s, alg));
    case K::scale:
      return alg.scalar_mul(eval_weight(*f.weight, s, alg),
                            eval_weighting(*f.lhs, s, alg));
  }
  return {};
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int arith_prec(const ArithExpr& e) {
  using K = ArithExpr::Kind;
  switch (e.kind) {
    case K::add:
    case K::sub:
      return 1;
    case K::mul:
      return 2;
    case K::neg:
      return 3;
    case K::constant:
      return e.value < 0 ? 3 : 4;
    default:
      return 4;
  }
}

std::string print_arith(const ArithExpr& e, int min_prec) {
  using K = ArithExpr::Kind;
  std::string out;
  switch (e.kind) {
    case K::constant:
      out = std::to_string(e.value);
      break;
    case K::variable:
      out = e.name;
      break;
    case K::add:
      out = print_arith(*e.lhs, 1) + " + " + print_arith(*e.rhs, 2);
      break;
    case K::sub:
      out = print_arith(*e.lhs, 1) + " - " + print_arith(*e.rhs, 2);
      break;
    case K::mul:
      out = print_arith(*e.lhs, 2) + " * " + print_arith(*e.rhs, 3);
      break;
    case K::neg:
      // A literal right after a minus sign is read as a negative constant.
      out = e.lhs->kind == K::constant ? "-(" + print_arith(*e.lhs, 0) + ")"
                                       : "-" + print_arith(*e.lhs, 3);
      break;
    case K::min:
      out = "min(" + print_arith(*e.lhs, 0) + ", " + print_arith(*e.rhs, 0) + ")";
      break;
    case K::max:
      out = "max(" + print_arith(*e.lhs, 0) + ", " + print_arith(*e.rhs, 0) + ")";
      break;
    case K::fib:
      out = "fib(" + print_arith(*e.lhs, 0) + ")";
      break;
  }
  return arith_prec(e) < min_prec ? "(" + out + ")" : out;
}

const char* cmp_symbol(CmpOp op) {
  switch (op) {
    case CmpOp::eq: return "=";
    case CmpOp::ne: return "!=";
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::gt: return ">";
    case CmpOp::ge: return ">=";
  }
  return "?";
}

int bool_prec(const BoolExpr& b) {
  switch (b.kind) {
    case BoolExpr::Kind::disj:
      return 1;
    case BoolExpr::Kind::conj:
      return 2;
    case BoolExpr::Kind::negation:
      return 3;
    default:
      return 4;
  }
}

std::string print_bool(const BoolExpr& b, int min_prec) {
  using K = BoolExpr::Kind;
  std::string out;
  switch (b.kind) {
    case K::constant:
      out = b.value ? "true" : "false";
      break;
    case K::compare:
      out = print_arith(*b.left, 0) + " " + cmp_symbol(b.cmp) + " " +
            print_arith(*b.right, 0);
      break;
    case K::conj:
      out = print_bool(*b.lhs, 2) + " and " + print_bool(*b.rhs, 3);
      break;
    case K::disj:
      out = print_bool(*b.lhs, 1) + " or " + print_bool(*b.rhs, 2);
      break;
    case K::negation:
      out = "not " + print_bool(*b.lhs, 3);
      break;
  }
  return bool_prec(b) < min_prec ? "(" + out + ")" : out;
}

std::string print_weighting(const WeightingExpr& f, const Algebra& alg,
                            bool operand) {
  using K = WeightingExpr::Kind;
  switch (f.kind) {
    case K::zero:
      return "zero";
    case K::one:
      return "one";
    case K::top:
      return "top";
    case K::literal:
      return alg.format(f.literal);
    case K::embed:
      return "int(" + print_arith(*f.arith, 0) + ")";
    case K::guard:
      return "[" + print_bool(*f.guard, 0) + "] " +
             print_weighting(*f.lhs, alg, true);
    case K::sum: {
      std::string out = print_weighting(*f.lhs, alg, false) + " (+) " +
                        print_weighting(*f.rhs, alg, true);
      return operand ? "(" + out + ")" : out;
    }
    case K::scale:
      return to_string(*f.weight, alg) + " (*) " +
             print_weighting(*f.lhs, alg, true);
  }
  return "?";
}

std::string print_program(const Program& p, const Algebra& alg);

std::string block(const Program& p, const Algebra& alg) {
  return "{" + print_program(p, alg) + "}";
}

std::string print_program(const Program& p, const Algebra& alg) {
  using K = Program::Kind;
  switch (p.kind) {
    case K::assign:
      return p.var + " := " + print_arith(*p.arith, 0);
    case K::seq: {
      std::string head = p.first->kind == K::seq ? block(*p.first, alg)
                                                 : print_program(*p.first, alg);
      return head + "; " + print_program(*p.second, alg);
    }
    case K::ite:
      return "if (" + print_bool(*p.guard, 0) + ") " + block(*p.first, alg) +
             " else " + block(*p.second, alg);
    case K::loop:
      return "while (" + print_bool(*p.guard, 0) + ") " + block(*p.first, alg);
    case K::branch:
      return block(*p.first, alg) + " [] " + block(*p.second, alg);
    case K::weigh:
      return "weigh " + to_string(*p.weight, alg);
  }
  return "?";
}

}  // namespace

std::string to_string(const ArithExpr& e) { return print_arith(e, 0); }

std::string to_string(const BoolExpr& b) { return print_bool(b, 0); }

std::string to_string(const WeightExpr& w, const Algebra& alg) {
  if (w.kind == WeightExpr::Kind::embed)
    return "int(" + print_arith(*w.arith, 0) + ")";
  return alg.format(w.literal);
}

std::string to_string(const WeightingExpr& f, const Algebra& alg) {
  return print_weighting(f, alg, false);
}

std::string to_string(const Program& p, const Algebra& alg) {
  return print_program(p, alg);
}

}  // namespace wgcl
