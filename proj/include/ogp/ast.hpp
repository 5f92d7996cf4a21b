#pragma once

// Abstract syntax of guarded-command multiprograms, their properties and
// progress proof scripts.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ogp/expr.hpp"

namespace ogp {

struct Assignment {
    std::string target;
    int slot = -1;
    Expr value;
    SourceLoc loc;
};

enum class StmtKind { Skip, Assign, Seq, Atomic, If, Do };

/// One node of a component body. Statement lists are always `Seq` nodes,
/// even with a single element, so that assertions and the explicit final
/// label of a list have a home.
///
/// Labels are component-local identifiers. `init` names the statement's
/// initial atomic action; `fin` is its final label. Both are filled in by
/// `auto_label`; `explicit_label` is what the user wrote, if anything.
struct Stmt {
    StmtKind kind = StmtKind::Skip;
    SourceLoc loc;

    std::vector<Assignment> assigns;  // Assign
    std::vector<Expr> guards;         // If/Do, parallel to kids
    std::vector<Stmt> kids;           // Seq items, Atomic body (kids[0]), If/Do branch bodies (Seq)

    std::vector<Expr> asserts;        // assertions written before this statement
    std::vector<Expr> post_asserts;   // Seq only: trailing assertions (at the list's final label)
    std::string explicit_label;       // user label before this statement
    std::string explicit_final;       // Seq only: user label after the last item (component end)
    SourceLoc label_loc, final_loc;

    std::string init, fin;
};

struct Component {
    std::string name;
    Stmt body;  // a Seq
    SourceLoc loc;

    // Filled by labelling.
    std::vector<std::string> labels;  // pc domain in order; the final label is last
    std::string initial, final;
    int pc_slot = -1;
};

enum class PropertyKind { Unless, LeadsTo, Postcondition, Invariant, DeadlockFree };

struct Property {
    std::string name;
    PropertyKind kind = PropertyKind::LeadsTo;
    Expr p, q;
    SourceLoc loc;
};

enum class Rule {
    Immediate,
    Implication,
    Transitivity,
    Disjunction,     // explicit cases
    DisjunctionFor,  // cases over a bounded integer parameter
    Impossibility,
    DisjunctionTheorem,
    Cancellation,
    Psp,
    Induction,
    Completion,
    Show,   // explicit goal, matched against the required one by weakening
    Lemma,  // appeal to another declared leads-to property
};

/// A node of a leads-to proof script. Which fields are used depends on the
/// rule; `preds` holds the rule's predicate arguments in source order.
struct ProofNode {
    Rule rule = Rule::Implication;
    SourceLoc loc;
    std::string target;   // Immediate: "X.2"; Lemma: property name
    std::string param;    // DisjunctionFor / Induction parameter
    Value lo = 0, hi = 0;  // parameter range
    Expr measure;         // Induction
    std::vector<Expr> preds;
    std::vector<ProofNode> kids;
};

struct ProofScript {
    std::string property;
    ProofNode root;
    SourceLoc loc;
};

struct Program {
    std::string name;
    Expr pre;  // as written; `effective_pre` adds the pc conjuncts
    VarTable vars;
    std::vector<Component> components;
    std::vector<Expr> invariants;
    std::vector<Property> properties;
    std::vector<ProofScript> proofs;

    bool labelled = false;
    bool instrumented = false;

    int component_index(const std::string& name) const;
    const Property* property(const std::string& name) const;
    const ProofScript* proof(const std::string& name) const;
};

/// Assertions keyed by (component index, label id), in program order.
using Annotation = std::map<std::pair<int, std::string>, std::vector<Expr>>;

Annotation annotation(const Program& program);

/// pc.A == initial label of A, for every component A, conjoined with Pre.
Expr effective_pre(const Program& program);

/// `pc.A == A.id` as a resolved predicate.
Expr pc_at(const Program& program, int component, const std::string& label);

}  // namespace ogp
