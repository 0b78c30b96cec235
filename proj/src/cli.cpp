#include "wgcl/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "wgcl/invariants.hpp"
#include "wgcl/parser.hpp"

namespace wgcl {

namespace {

struct Config {
  std::string file;
  std::string instance;
  std::string post = "one";
  std::string inv;
  std::vector<std::string> states;
  std::string grid;
  std::size_t fuel = 64;
  std::size_t budget = 1'000'000;
  std::size_t max_states = 100'000;
  std::string format = "text";
  std::string mode;
  std::string strategy = "auto";
  std::string loop_path;
  std::string ratio;
  bool liberal = false;
  std::size_t depth = 0;
};

std::size_t default_fuel() {
  if (const char* env = std::getenv("WGCL_FUEL")) {
    try {
      std::size_t used = 0;
      unsigned long value = std::stoul(env, &used);
      if (used == std::string(env).size() && value > 0) return value;
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError("WGCL_FUEL", "expected a positive integer");
  }
  return 64;
}

struct Usage : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Inputs {
  Algebra alg;
  ProgramPtr program;
  std::vector<std::string> vars;  // variables shown for every state
  std::vector<State> states;
};

Inputs load(const Config& c) {
  std::optional<Algebra> override;
  if (!c.instance.empty()) {
    try {
      override = Algebra::parse(c.instance);
    } catch (const AlgebraError& e) {
      throw Usage(e.what());
    }
  }
  ParsedProgram parsed = parse_program(read_file(c.file), override);
  Inputs in{parsed.algebra, parsed.program, {}, {}};
  std::set<std::string> vars;
  if (!c.grid.empty()) {
    Grid g;
    try {
      g = parse_grid(c.grid, c.max_states);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw Usage(e.what());
    }
    in.states = std::move(g.states);
    vars.insert(g.vars.begin(), g.vars.end());
  }
  for (const auto& text : c.states) {
    State s = parse_state(text);
    std::stringstream ss(text);
    std::string binding;
    while (std::getline(ss, binding, ',')) {
      auto name = binding.substr(0, binding.find('='));
      name.erase(0, name.find_first_not_of(" \t"));
      name.erase(name.find_last_not_of(" \t") + 1);
      if (!name.empty()) vars.insert(name);
    }
    in.states.push_back(std::move(s));
  }
  if (in.states.size() > c.max_states)
    throw Usage("more than " + std::to_string(c.max_states) + " states requested");
  if (in.states.empty()) in.states.push_back(State());
  in.vars.assign(vars.begin(), vars.end());
  return in;
}

std::string show_state(const State& s, const std::vector<std::string>& vars) {
  std::string out;
  std::set<std::string> shown;
  auto add = [&](const std::string& name, std::int64_t value) {
    if (!out.empty()) out += ',';
    out += name + "=" + std::to_string(value);
  };
  for (const auto& v : vars) {
    add(v, s.get(v));
    shown.insert(v);
  }
  for (const auto& [name, value] : s.values())
    if (!shown.count(name)) add(name, value);
  return out.empty() ? "-" : out;
}

class Table {
 public:
  Table(std::ostream& out, bool tsv) : out_(out), tsv_(tsv) {}

  void row(const std::vector<std::string>& cells) {
    const char* sep = tsv_ ? "\t" : " | ";
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << sep;
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
  bool tsv_;
};

const char* exactness(bool exact) { return exact ? "exact" : "inexact"; }

EvalOptions eval_options(const Config& c) {
  EvalOptions o;
  o.fuel = c.fuel;
  o.budget = c.budget;
  if (c.mode == "gfp1") o.mode = WlpMode::gfp_leq_one;
  if (c.strategy == "chain") o.strategy = WlpStrategy::chain;
  if (c.strategy == "lasso") o.strategy = WlpStrategy::lasso;
  return o;
}

int cmd_transform(const Config& c, Direction dir, std::ostream& out) {
  Inputs in = load(c);
  auto post = make_weighting(in.alg, parse_weighting(c.post, in.alg));
  auto options = eval_options(c);
  Table table(out, c.format == "tsv");
  bool all_exact = true;
  for (const auto& s : in.states) {
    TransformResult r = transform(dir, in.program, *post, s, in.alg, options);
    all_exact = all_exact && r.exact;
    table.row({show_state(s, in.vars), in.alg.format(r.value), exactness(r.exact)});
  }
  return all_exact ? exit_ok : exit_inexact;
}

int cmd_check(const Config& c, std::ostream& out) {
  Inputs in = load(c);
  ProgramPtr loop = select_loop(in.program, c.loop_path);
  auto post = make_weighting(in.alg, parse_weighting(c.post, in.alg));
  auto inv = make_weighting(in.alg, parse_weighting(c.inv, in.alg));
  auto options = eval_options(c);
  CheckReport report;
  if (c.mode == "super")
    report = check_superinvariant(loop, post, *inv, in.states, in.alg, options);
  else if (c.mode == "sub")
    report = check_subinvariant(loop, post, *inv, in.states, in.alg, options);
  else
    report = check_fixed_point(loop, post, *inv, in.states, in.alg, options);
  Table table(out, c.format == "tsv");
  for (const auto& v : report.states) {
    std::vector<std::string> row{show_state(v.state, in.vars),
                                 in.alg.format(v.lhs), in.alg.format(v.rhs),
                                 v.holds ? "holds" : "fails"};
    if (v.uct) {
      row.push_back("uct " + to_string(*v.uct));
      if (v.closed) row.push_back("wp = wlp = I");
    }
    table.row(row);
  }
  out << report.conclusion << '\n';
  return report.all_hold ? exit_ok : exit_mismatch;
}

std::optional<Rational> numeric(const ModuleValue& u) {
  if (auto n = u.get_if<ExtNat>(); n && !n->is_infinite())
    return Rational(n->value());
  if (auto a = u.get_if<Arctic>(); a && a->is_finite()) return Rational(a->value());
  if (auto r = u.get_if<ExtRational>(); r && !r->is_infinite()) return r->value();
  return std::nullopt;
}

int cmd_ratio(const Config& c, std::ostream& out) {
  Inputs in = load(c);
  Config other_config = c;
  other_config.file = c.ratio;
  Inputs other = load(other_config);
  if (!(other.alg == in.alg))
    throw Usage("both programs must use the same instance");
  auto post = make_weighting(in.alg, parse_weighting(c.post, in.alg));
  auto options = eval_options(c);
  Table table(out, c.format == "tsv");
  std::optional<Rational> best;
  std::vector<std::string> argmax;
  bool all_exact = true;
  for (const auto& s : in.states) {
    auto a = wp_eval(in.program, *post, s, in.alg, options);
    auto b = wp_eval(other.program, *post, s, in.alg, options);
    all_exact = all_exact && a.exact && b.exact;
    auto x = numeric(a.value), y = numeric(b.value);
    std::string ratio = "undefined";
    if (x && y && *y != 0) {
      Rational q = *x / *y;
      ratio = to_string(q);
      const std::string where = show_state(s, in.vars);
      if (!best || q > *best) {
        best = q;
        argmax = {where};
      } else if (q == *best) {
        argmax.push_back(where);
      }
    }
    table.row({show_state(s, in.vars), in.alg.format(a.value),
               in.alg.format(b.value), ratio,
               exactness(a.exact && b.exact)});
  }
  if (best) {
    out << "max ratio " << to_string(*best) << " at " << argmax.front();
    if (argmax.size() > 1) out << " (and " << argmax.size() - 1 << " more)";
    out << "; a lower bound for the supremum over all states\n";
  } else {
    out << "no state with a defined ratio\n";
  }
  return all_exact ? exit_ok : exit_inexact;
}

int cmd_compare(const Config& c, std::ostream& out) {
  if (!c.ratio.empty()) return cmd_ratio(c, out);
  Inputs in = load(c);
  auto post = make_weighting(in.alg, parse_weighting(c.post, in.alg));
  auto options = eval_options(c);
  OracleOptions oracle{c.depth ? c.depth : c.fuel, c.budget};
  Table table(out, c.format == "tsv");
  bool mismatch = false, all_exact = true;
  for (const auto& s : in.states) {
    TransformResult t = c.liberal
                            ? wlp_eval(in.program, *post, s, in.alg, options)
                            : wp_eval(in.program, *post, s, in.alg, options);
    OracleResult o;
    if (!c.liberal) {
      o = op_oracle(in.program, s, *post, in.alg, oracle);
    } else {
      // wlp⟦C⟧(f) = op⟦C⟧(f) ⊕ olp⟦C⟧.
      OracleResult terminating = op_oracle(in.program, s, *post, in.alg, oracle);
      OracleResult diverging = olp_oracle(in.program, s, in.alg, oracle);
      o = {in.alg.mod_add(terminating.value, diverging.value),
           terminating.exact && diverging.exact, terminating.paths};
    }
    const bool same = t.value == o.value;
    if (t.exact && o.exact && !same) mismatch = true;
    all_exact = all_exact && t.exact && o.exact;
    table.row({show_state(s, in.vars), in.alg.format(t.value),
               in.alg.format(o.value), same ? "equal" : "differ",
               std::string("transformer ") + exactness(t.exact),
               std::string("oracle ") + exactness(o.exact)});
  }
  if (mismatch) return exit_mismatch;
  return all_exact ? exit_ok : exit_inexact;
}

int cmd_paths(const Config& c, std::ostream& out) {
  Inputs in = load(c);
  Table table(out, c.format == "tsv");
  bool truncated = false;
  for (const auto& s : in.states) {
    Configuration start{in.program, s, 0, ""};
    PathReport report =
        enumerate_paths(start, c.depth ? c.depth : c.fuel, in.alg, c.budget);
    truncated = truncated || report.truncated;
    for (const auto& p : report.paths) {
      const auto& last = p.configurations.back();
      table.row({last.history.empty() ? "ε" : last.history,
                 in.alg.format(p.weight), show_state(last.state, in.vars),
                 p.terminal ? "terminal" : "cut"});
    }
  }
  return truncated ? exit_inexact : exit_ok;
}

int cmd_uct(const Config& c, std::ostream& out) {
  Inputs in = load(c);
  Table table(out, c.format == "tsv");
  bool all_certain = true;
  const std::size_t bound = c.depth ? c.depth : c.budget;
  for (const auto& s : in.states) {
    UctResult r = uct_check(in.program, s, in.alg, bound, c.budget);
    std::string detail;
    if (r.verdict == UctResult::Verdict::certain)
      detail = "max path length " + std::to_string(r.max_length);
    else if (r.verdict == UctResult::Verdict::refuted)
      detail = "lasso with stem " + std::to_string(r.stem.size()) +
               " and cycle " + std::to_string(r.cycle.size());
    else
      detail = r.reason;
    all_certain = all_certain && r.verdict == UctResult::Verdict::certain;
    table.row({show_state(s, in.vars), to_string(r.verdict), detail});
  }
  return all_certain ? exit_ok : exit_inexact;
}

int cmd_decompose(const Config& c, std::ostream& out) {
  Inputs in = load(c);
  auto post = make_weighting(in.alg, parse_weighting(c.post, in.alg));
  auto verdicts =
      check_decomposition(in.program, *post, in.states, in.alg, eval_options(c));
  Table table(out, c.format == "tsv");
  bool differ = false, untested = false;
  for (const auto& v : verdicts) {
    differ = differ || v.verdict == Decomposition::differ;
    untested = untested || v.verdict == Decomposition::untested;
    table.row({show_state(v.state, in.vars), in.alg.format(v.wlp),
               in.alg.format(v.sum), to_string(v.verdict)});
  }
  if (differ) return exit_mismatch;
  return untested ? exit_inexact : exit_ok;
}

int cmd_parse(const Config& c, std::ostream& out) {
  Inputs in = load(c);
  out << "@instance " << in.alg.name() << '\n'
      << to_string(*in.program, in.alg) << '\n';
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Weakest (liberal) preweightings of weighted guarded commands"};
  app.name("wgcl");
  app.require_subcommand(1);
  Config c;
  try {
    c.fuel = default_fuel();
  } catch (const CLI::Error& e) {
    err << "error: WGCL_FUEL: " << e.what() << '\n';
    return exit_usage;
  }

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", c.file, "program file")->required();
    sub->add_option("--instance", c.instance, "instance overriding the pragma");
    sub->add_option("--state", c.states, "initial state, e.g. x=2,y=3 (repeatable)");
    sub->add_option("--grid", c.grid, "state grid, e.g. n=0..8,y=0..8");
    sub->add_option("--fuel", c.fuel, "Φ applications per loop / path depth")
        ->check(CLI::PositiveNumber);
    sub->add_option("--budget", c.budget, "state and configuration budget")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-states", c.max_states, "cap on requested states")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"text", "tsv"}));
  };

  auto* wp = app.add_subcommand("wp", "weakest preweighting");
  common(wp);
  wp->add_option("--post", c.post, "postweighting");

  auto* wlp = app.add_subcommand("wlp", "weakest liberal preweighting");
  common(wlp);
  wlp->add_option("--post", c.post, "postweighting");
  wlp->add_option("--mode", c.mode, "gfp (default) or gfp1 (below 1, prob)")
      ->check(CLI::IsMember({"gfp", "gfp1"}));
  wlp->add_option("--strategy", c.strategy, "auto, chain or lasso")
      ->check(CLI::IsMember({"auto", "chain", "lasso"}));

  auto* check = app.add_subcommand("check", "loop invariant checks");
  common(check);
  check->add_option("--post", c.post, "postweighting of the loop");
  check->add_option("--inv", c.inv, "candidate invariant")->required();
  check->add_option("--mode", c.mode, "super, sub or fixed")
      ->check(CLI::IsMember({"super", "sub", "fixed"}))
      ->default_val("fixed");
  check->add_option("--loop-path", c.loop_path, "child indices, e.g. 1.0");

  auto* compare = app.add_subcommand("compare", "transformer against operational oracle");
  common(compare);
  compare->add_option("--post", c.post, "postweighting");
  compare->add_flag("--liberal", c.liberal, "compare wlp with op ⊕ olp");
  compare->add_option("--depth", c.depth, "oracle path depth (default: fuel)");
  compare->add_option("--ratio", c.ratio, "second program; report wp ratios");

  auto* paths = app.add_subcommand("paths", "enumerate computation paths");
  common(paths);
  paths->add_option("--depth", c.depth, "path length limit (default: fuel)");

  auto* uct = app.add_subcommand("uct", "universal certain termination");
  common(uct);
  uct->add_option("--bound", c.depth, "path length bound (default: budget)");

  auto* decompose = app.add_subcommand("decompose", "wlp = wp ⊕ wlp(0) check");
  common(decompose);
  decompose->add_option("--post", c.post, "postweighting");
  decompose->add_option("--strategy", c.strategy, "auto, chain or lasso")
      ->check(CLI::IsMember({"auto", "chain", "lasso"}));

  auto* parse = app.add_subcommand("parse", "parse and print a program");
  common(parse);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (wp->parsed()) return cmd_transform(c, Direction::wp, out);
    if (wlp->parsed()) return cmd_transform(c, Direction::wlp, out);
    if (check->parsed()) return cmd_check(c, out);
    if (compare->parsed()) return cmd_compare(c, out);
    if (paths->parsed()) return cmd_paths(c, out);
    if (uct->parsed()) return cmd_uct(c, out);
    if (decompose->parsed()) return cmd_decompose(c, out);
    if (parse->parsed()) return cmd_parse(c, out);
  } catch (const Usage& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_error;
  }
  return exit_usage;
}

}  // namespace wgcl
