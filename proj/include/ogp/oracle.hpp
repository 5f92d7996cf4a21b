#pragma once

// Explicit-state semantics under weak fairness: the ground truth against
// which proof-theoretic verdicts are compared.

#include <optional>
#include <string>
#include <vector>

#include "ogp/ast.hpp"
#include "ogp/lang.hpp"

namespace ogp {

struct Transition {
    int target = -1;
    int component = -1;
    int action = -1;  // index into TransitionSystem::actions
    int branch = -1;  // guard index for IfEval/DoEval; -1 for the exit or a non-branching action
};

/// Global states are full valuations (data and every pc). States are
/// numbered in breadth-first discovery order from the sorted initial states,
/// so two builds of one program are identical.
struct TransitionSystem {
    VarTable vars;
    std::vector<std::string> components;
    std::vector<int> pc_slots;
    std::vector<Value> final_index;  // per component: index of its final label
    std::vector<AtomicAction> actions;

    std::vector<Valuation> states;
    std::vector<int> initial;
    std::vector<std::vector<Transition>> out;
    std::vector<int> parent;  // BFS tree, -1 for initial states
    std::vector<Transition> parent_edge;

    std::size_t size() const { return states.size(); }
    std::size_t transition_count() const;
    bool terminal(int s) const;  // every component at its final label
    bool enabled(int s, int component) const;
    std::string render(int s) const { return vars.render(states[static_cast<std::size_t>(s)]); }
};

TransitionSystem build_state_space(const Program& program, const Limits& limits = {});

/// Outcomes of running a Do-free atomic body to completion from `v`.
/// `blocks` is set if some execution reaches an IF with no true guard.
struct BodyOutcome {
    std::vector<Valuation> finals;
    bool blocks = false;
};
BodyOutcome run_body(const Stmt& body, const Valuation& v, const VarTable& vars);

struct Step {
    int component = -1;  // -1 for the first state of a trace
    std::string action;  // site, e.g. "X.2"
    int state = -1;
};

struct Trace {
    std::vector<Step> stem;   // from an initial state
    std::vector<Step> cycle;  // starts after stem.back().state and returns to it; empty if none
    int focus = -1;           // index in stem of the state the property is about
    std::string kind;         // "deadlock", "terminal", "fair cycle", "transition", "state"
};

struct OracleResult {
    bool holds = true;
    std::optional<Trace> witness;
};

OracleResult oracle_unless(const TransitionSystem& ts, const Expr& p, const Expr& q);
OracleResult oracle_leadsto(const TransitionSystem& ts, const Expr& p, const Expr& q);
OracleResult oracle_invariant(const TransitionSystem& ts, const Expr& p);
OracleResult oracle_postcondition(const TransitionSystem& ts, const Expr& p);
OracleResult oracle_deadlock_free(const TransitionSystem& ts);

struct AssertionViolation {
    std::string site;
    Expr assertion;
    int state = -1;
};
std::vector<AssertionViolation> oracle_assertions(const TransitionSystem& ts, const Program& program);

/// A trace from an initial state to `s` along the BFS tree.
std::vector<Step> stem_to(const TransitionSystem& ts, int s);

/// Every component takes a step in the cycle or is disabled at one of its states.
bool cycle_is_fair(const TransitionSystem& ts, const Trace& trace);

/// Violations of: each pc holds exactly one label of its component (at most
/// one and at least one active control point), and a step of one component
/// leaves every other pc unchanged.
std::vector<std::string> control_state_violations(const TransitionSystem& ts, const Program& program);

/// Builds the state space of the program read without program counters
/// (control as continuations) and checks it is isomorphic to `ts` with the
/// pc slots erased. Returns an empty string on success, else the mismatch.
std::string check_pc_projection(const TransitionSystem& ts, const Program& program, const Limits& limits = {});

struct RawSystem {
    std::vector<Valuation> data;                 // per state, data slots only
    std::vector<std::vector<std::pair<int, int>>> out;  // (component, target)
    std::vector<int> initial;
    std::vector<bool> terminal;
};

/// The uninstrumented semantics: control is a stack of pending statements.
RawSystem build_raw_state_space(const Program& program, const Limits& limits = {});

std::string render_trace(const TransitionSystem& ts, const Trace& trace);

}  // namespace ogp
