#pragma once

// Labelling, program-counter instrumentation, name resolution and
// atomic-action extraction.

#include <optional>
#include <string>
#include <vector>

#include "ogp/ast.hpp"

namespace ogp {

enum class ActionKind { Skip, Assign, Atomic, IfEval, DoEval };

struct Branch {
    Expr guard;
    std::string target;
};

/// One atomic action `i: ... j:` with its program-counter update made
/// explicit: the action moves pc to `target` (skip, assignment, atomic) or
/// to the target of the branch whose guard it evaluated true.
struct AtomicAction {
    ActionKind kind = ActionKind::Skip;
    int component = -1;
    std::string component_name;
    std::string label;
    std::string target;                // Skip/Assign/Atomic
    std::vector<Assignment> assigns;   // Assign
    std::optional<Stmt> body;          // Atomic: the unlabelled body
    std::vector<Branch> branches;      // IfEval/DoEval
    std::optional<Branch> exit;        // DoEval: guard is !(B1 || ... || Bn)
    int pc_slot = -1;
    SourceLoc loc;

    std::string site() const { return component_name + "." + label; }
};

const char* to_string(ActionKind k);

/// Assigns labels to every atomic action. Explicit labels are kept and
/// reserve their spelling; fresh labels are ordinals in textual order of
/// initial-action occurrence. Throws LabelError on duplicates.
Program auto_label(Program program);

/// Rebuilds pc variable declarations and resolves every expression in the
/// program (identifiers, label literals, types). Throws ResolveError.
void resolve(Program& program);

/// Resolves a free-standing predicate against a labelled program.
/// `params` are names treated as proof-template parameters.
Expr resolve_predicate(const Program& program, const Expr& raw, const std::vector<std::string>& params = {});

/// Resolves a free-standing integer expression, e.g. an induction measure.
Expr resolve_integer(const Program& program, const Expr& raw, const std::vector<std::string>& params = {});

/// Marks the labelled program as carrying explicit pc updates. Idempotent.
Program instrument_counters(Program program);

/// One action per non-final label, component by component, in label order.
std::vector<AtomicAction> extract_actions(const Program& program);

/// Locates the action `component.label`; throws ContractError if absent.
const AtomicAction& find_action(const std::vector<AtomicAction>& actions, const std::string& site);

struct Diagnostic {
    SourceLoc loc;
    std::string code;  // scope, distinct, atomic, label, aux, pre
    std::string message;
};

std::vector<Diagnostic> validate_wellformed(const Program& program);

/// Writes a labelled statement `i: ... j:` for diagnostics and reports.
std::string describe(const AtomicAction& action);

}  // namespace ogp
