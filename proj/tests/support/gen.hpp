#pragma once

// Random small programs and predicates, and an independent big-step
// evaluator for Do-free statements.

#include <random>
#include <string>
#include <vector>

#include "ogp/ast.hpp"

namespace ogptest {

using Rng = std::mt19937_64;

struct GenOptions {
    int max_components = 3;
    int max_actions = 5;  // over all components
    bool allow_do = true;
    bool annotate = false;  // sprinkle assertions
};

/// Variables are always `a, b : bool` and `n : int 0..3`.
std::string random_program_text(Rng& rng, const GenOptions& options = {});
ogp::Program random_program(Rng& rng, const GenOptions& options = {});

std::string random_predicate_text(Rng& rng, const ogp::Program& program, bool with_pc = true, int depth = 2);
ogp::Expr random_predicate(Rng& rng, const ogp::Program& program, bool with_pc = true, int depth = 2);

/// Terminating outcomes of a labelled Do-free statement of `component`,
/// with the pc moved as each atomic action does.
std::vector<ogp::Valuation> big_step(const ogp::Program& program, int component, const ogp::Stmt& stmt,
                                     const ogp::Valuation& v);

/// Every valuation of the declared variables, pcs included.
std::vector<ogp::Valuation> all_valuations(const ogp::VarTable& vars);

/// {pre} stmt {post} by running big_step from every pre-state.
bool triple_by_enumeration(const ogp::Program& program, int component, const ogp::Expr& pre, const ogp::Stmt& stmt,
                           const ogp::Expr& post);

int pick(Rng& rng, int lo, int hi);
bool coin(Rng& rng, double p = 0.5);

}  // namespace ogptest
