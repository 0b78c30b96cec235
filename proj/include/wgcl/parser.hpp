#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wgcl/syntax.hpp"

namespace wgcl {

struct ParsedProgram {
  Algebra algebra;
  ProgramPtr program;
};

/// Parses a program file. The first line may hold the pragma
/// `@instance <name>`; `instance`, when given, takes precedence over it.
/// Sugar is expanded: `skip`, `{C1} [a] (+) [b] {C2}`, and word powers
/// `weigh a^e`.
ParsedProgram parse_program(std::string_view text,
                            const std::optional<Algebra>& instance = {});

ArithPtr parse_arith(std::string_view text);
BoolPtr parse_bool(std::string_view text);
WeightingExprPtr parse_weighting(std::string_view text, const Algebra& alg);

/// `x=2,y=-3`; the empty string is the all-zero state.
State parse_state(std::string_view text);

struct Grid {
  std::vector<std::string> vars;
  std::vector<State> states;
};

/// `n=0..8,y=0..8` or `x=2`; states are ordered by variable name, then value.
/// Throws Error if the grid has more than `max_states` points.
Grid parse_grid(std::string_view text, std::size_t max_states);

}  // namespace wgcl
