#pragma once

// Predicate transformers over labelled statements with implicit program
// counters, wp for loop-free atomic bodies, and the loop-invariant rule.

#include <string>
#include <vector>

#include "ogp/ast.hpp"
#include "ogp/lang.hpp"

namespace ogp {

/// The binding `pc.C := C.id` for component `component`.
std::pair<int, Expr> pc_binding(const Program& program, int component, const std::string& label);

/// wlp of an unlabelled, Do-free statement (an atomic body). No pc update.
Expr wlp_body(const Stmt& body, const Expr& post);

/// Total-correctness transformer for atomic bodies: an IF contributes the
/// disjunction of its guards. Throws ContractError on Do.
Expr wp_atomic(const Stmt& body, const Expr& post);

/// wlp of a labelled, Do-free statement of `component`, updating pc as the
/// statement's atomic actions do.
Expr wlp(const Program& program, int component, const Stmt& stmt, const Expr& post);

/// wlp of a single atomic action (one step of its component).
Expr wlp(const Program& program, const AtomicAction& action, const Expr& post);

struct DoObligation {
    std::string what;  // "branch 1", ..., "exit"
    Expr formula;
    ValidityResult result;
};

/// Loop-invariant rule for `i: do B1 -> S1 [] ... od k:` with invariant `inv`:
/// inv && Bm ==> (wlp.Sm.inv)[pc := jm] for each branch, and
/// inv && !(B1 || ...) ==> post[pc := k].
std::vector<DoObligation> check_do(const Program& program, int component, const Stmt& loop, const Expr& inv,
                                   const Expr& post, const Limits& limits = {});

/// {pre} stmt {post}, i.e. pre ==> wlp.stmt.post, for a Do-free labelled stmt.
ValidityResult hoare_holds(const Program& program, int component, const Expr& pre, const Stmt& stmt,
                           const Expr& post, const Limits& limits = {});

}  // namespace ogp
