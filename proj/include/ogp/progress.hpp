#pragma once

// Unless, immediate progress and leads-to proof scripts.

#include <string>
#include <vector>

#include "ogp/ast.hpp"
#include "ogp/safety.hpp"

namespace ogp {

/// P && !Q && U ==> wlp.S.(P || Q) for every atomic action {U} S.
std::vector<Obligation> check_unless(const Program& program, const Expr& p, const Expr& q,
                                     const Limits& limits = {});

/// The immediate progress rule for P leadsto Q with the action at `site`
/// ("X.2"): the unless obligations, clause 1 and the clause-2 obligations
/// for the action's kind. Throws ContractError for an unknown site.
std::vector<Obligation> check_immediate(const Program& program, const Expr& p, const Expr& q,
                                        const std::string& site, const Limits& limits = {});

struct ProgressResult {
    bool ok = true;
    std::vector<Obligation> obligations;  // pre-order of the proof tree
};

/// Checks the script against the leads-to property it names.
ProgressResult check_script(const Program& program, const ProofScript& script, const Limits& limits = {});

/// Replaces free occurrences of a template parameter throughout a subtree.
ProofNode instantiate(const ProofNode& node, const std::string& param, Value v);

/// Every obligation for one declared property: unless obligations, the
/// script of a leads-to property, or the safety obligations of an
/// invariant or postcondition property.
std::vector<Obligation> obligations_report(const Program& program, const std::string& property,
                                           const Limits& limits = {});

struct CheckReport {
    std::vector<Obligation> obligations;  // safety first, then progress
    std::vector<std::string> errors;      // e.g. a leads-to property without a script
    bool ok() const { return errors.empty() && all_valid(obligations); }
};

/// Safety, then every unless and leads-to property. Progress obligations
/// are left pending when the annotation or the invariants fail.
CheckReport check_program(const Program& program, const Limits& limits = {});

}  // namespace ogp
