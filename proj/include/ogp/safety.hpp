#pragma once

// Owicki-Gries obligations: local and global correctness of the annotation,
// invariant preservation and the postcondition rule.

#include <optional>
#include <string>
#include <vector>

#include "ogp/ast.hpp"
#include "ogp/lang.hpp"

namespace ogp {

enum class ObligationKind { LC, GC, INV, POST, UN, IMM, RULE };
enum class Verdict { Valid, Invalid, Pending };

const char* to_string(ObligationKind k);
const char* to_string(Verdict v);

struct Obligation {
    std::string id;  // assigned by number(); stable for a given program
    ObligationKind kind = ObligationKind::LC;
    Expr formula;
    std::string rule;                // what the formula expresses
    std::vector<std::string> sites;  // actions and assertion sites involved
    std::string property;            // declared property, if any
    std::string node;                // position in a proof script, e.g. "1.2"
    Verdict verdict = Verdict::Pending;
    std::optional<Valuation> counterexample;
    std::vector<int> relevant;       // slots shown with the counterexample
};

/// Decides `o.formula` and records the verdict.
void decide(Obligation& o, const Program& program, const Limits& limits);

/// Assigns ids `<KIND>.<n>` in list order.
void number(std::vector<Obligation>& obligations);

bool all_valid(const std::vector<Obligation>& obligations);

/// U for the action: pc = i, the assertions at i and the declared invariants.
Expr action_precondition(const Program& program, const AtomicAction& action);

std::vector<Obligation> check_local(const Program& program, const Limits& limits = {});
std::vector<Obligation> check_global(const Program& program, const Limits& limits = {});

/// Pre ==> I, and I && U ==> wlp.S.I for every action {U} S.
std::vector<Obligation> check_invariant(const Program& program, const Expr& invariant, const Limits& limits = {});

/// The final assertions, declared invariants and every pc at its final
/// label imply P. Pending when there is nothing to conclude from.
Obligation check_postcondition(const Program& program, const Expr& p, const Limits& limits = {});

struct SafetyReport {
    std::vector<Obligation> obligations;  // LC, GC, INV, then property obligations
    bool annotation_ok = true;            // LC, GC and declared invariants all valid
    bool ok() const { return all_valid(obligations); }
};

/// LC, GC and declared invariants, then the Invariant and Postcondition
/// properties. Property obligations are pending if the annotation fails.
SafetyReport check_safety(const Program& program, const Limits& limits = {});

}  // namespace ogp
