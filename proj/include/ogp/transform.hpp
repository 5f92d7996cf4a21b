#pragma once

// The guard conjunction split as a checked program transformation, and a
// harness comparing oracle verdicts before and after.

#include <string>
#include <vector>

#include "ogp/ast.hpp"
#include "ogp/safety.hpp"

namespace ogp {

struct SplitRequest {
    std::string site;   // "A.1": an atomic `if B && C -> S fi` with one guard
    Expr hoist;         // B: one or more conjuncts of the guard, or `true`
    std::string fresh;  // label for the second half; chosen if empty
};

struct SplitResult {
    Program program;  // labelled and resolved, with {B} asserted at the new label
    std::string inserted;                     // site of the new action, "A.k"
    std::vector<Obligation> side_conditions;  // global correctness of {B} at the new label
    bool ok() const { return all_valid(side_conditions); }
};

/// Replaces `i: atomic if B && C -> S fi end j:` by
/// `i: atomic if B -> skip fi end; {B} k: atomic if C -> S fi end j:`.
/// Every other label keeps its name. Throws ContractError on a shape
/// mismatch or if B is not made of conjuncts of the guard.
SplitResult guard_conjunction_split(const Program& program, const SplitRequest& request, const Limits& limits = {});

struct HarnessLine {
    std::string what;  // e.g. "pc.A == A.1 leadsto pc.A == A.2"
    bool before = false;
    bool after = false;
};

struct HarnessReport {
    std::vector<HarnessLine> lines;
    std::vector<HarnessLine> divergences() const;
    bool equivalent() const { return divergences().empty(); }
};

/// Compares oracle verdicts for: deadlock freedom, every original
/// assertion, every declared property, and pc.X == ii leadsto pc.X == jj
/// for every component X and labels ii, jj present in both programs.
HarnessReport progress_equivalence(const Program& before, const Program& after, const Limits& limits = {});

}  // namespace ogp
