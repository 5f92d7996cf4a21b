#include "ogp/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ogp {

namespace {

struct VecHash {
    template <class T>
    std::size_t operator()(const std::vector<T>& v) const {
        std::size_t h = v.size();
        for (const T& x : v) h ^= std::hash<T>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

void store(Valuation& v, const VarTable& vars, int slot, Value x) {
    const VarDecl& d = vars[static_cast<std::size_t>(slot)];
    if (x < d.lo || x > d.hi)
        throw EvalError("value " + std::to_string(x) + " assigned to " + d.name + " is outside its domain");
    v[static_cast<std::size_t>(slot)] = x;
}

void assign(Valuation& v, const VarTable& vars, const std::vector<Assignment>& assigns) {
    std::vector<Value> values;
    values.reserve(assigns.size());
    for (const Assignment& a : assigns) values.push_back(evaluate(a.value, v));
    for (std::size_t i = 0; i < assigns.size(); ++i) store(v, vars, assigns[i].slot, values[i]);
}

void run(const Stmt& s, std::vector<Valuation> in, const VarTable& vars, BodyOutcome& out,
         std::vector<Valuation>& result) {
    switch (s.kind) {
        case StmtKind::Skip: result = std::move(in); return;
        case StmtKind::Assign:
            for (Valuation& v : in) assign(v, vars, s.assigns);
            result = std::move(in);
            return;
        case StmtKind::Atomic: run(s.kids.at(0), std::move(in), vars, out, result); return;
        case StmtKind::Seq: {
            std::vector<Valuation> cur = std::move(in);
            for (const Stmt& k : s.kids) {
                std::vector<Valuation> next;
                run(k, std::move(cur), vars, out, next);
                cur = std::move(next);
            }
            result = std::move(cur);
            return;
        }
        case StmtKind::If: {
            result.clear();
            for (const Valuation& v : in) {
                bool any = false;
                for (std::size_t i = 0; i < s.guards.size(); ++i) {
                    if (!holds(s.guards[i], v)) continue;
                    any = true;
                    std::vector<Valuation> r;
                    run(s.kids[i], {v}, vars, out, r);
                    result.insert(result.end(), r.begin(), r.end());
                }
                if (!any) out.blocks = true;
            }
            return;
        }
        case StmtKind::Do: throw ContractError("loops are not allowed inside atomic statements");
    }
}

int label_index(const Component& c, const std::string& label) {
    for (std::size_t i = 0; i < c.labels.size(); ++i)
        if (c.labels[i] == label) return static_cast<int>(i);
    throw ContractError("no label " + c.name + "." + label);
}

}  // namespace

BodyOutcome run_body(const Stmt& body, const Valuation& v, const VarTable& vars) {
    BodyOutcome out;
    run(body, {v}, vars, out, out.finals);
    std::sort(out.finals.begin(), out.finals.end());
    out.finals.erase(std::unique(out.finals.begin(), out.finals.end()), out.finals.end());
    return out;
}

std::size_t TransitionSystem::transition_count() const {
    std::size_t n = 0;
    for (const auto& o : out) n += o.size();
    return n;
}

bool TransitionSystem::terminal(int s) const {
    const Valuation& v = states[static_cast<std::size_t>(s)];
    for (std::size_t c = 0; c < pc_slots.size(); ++c)
        if (v[static_cast<std::size_t>(pc_slots[c])] != final_index[c]) return false;
    return true;
}

bool TransitionSystem::enabled(int s, int component) const {
    for (const Transition& t : out[static_cast<std::size_t>(s)])
        if (t.component == component) return true;
    return false;
}

TransitionSystem build_state_space(const Program& program, const Limits& limits) {
    if (!program.labelled) throw ContractError("the oracle needs a labelled program");
    TransitionSystem ts;
    ts.vars = program.vars;
    ts.actions = extract_actions(program);
    const std::size_t nc = program.components.size();
    // action index per (component, pc value), and target pc values per action
    std::vector<std::vector<int>> at(nc);
    std::vector<std::vector<int>> dest(ts.actions.size());
    for (std::size_t c = 0; c < nc; ++c) {
        const Component& comp = program.components[c];
        ts.components.push_back(comp.name);
        ts.pc_slots.push_back(comp.pc_slot);
        ts.final_index.push_back(label_index(comp, comp.final));
        at[c].assign(comp.labels.size(), -1);
    }
    for (std::size_t i = 0; i < ts.actions.size(); ++i) {
        const AtomicAction& a = ts.actions[i];
        const Component& comp = program.components[static_cast<std::size_t>(a.component)];
        at[static_cast<std::size_t>(a.component)][static_cast<std::size_t>(label_index(comp, a.label))] =
            static_cast<int>(i);
        if (a.kind == ActionKind::IfEval || a.kind == ActionKind::DoEval) {
            for (const Branch& b : a.branches) dest[i].push_back(label_index(comp, b.target));
            if (a.exit) dest[i].push_back(label_index(comp, a.exit->target));
        } else {
            dest[i].push_back(label_index(comp, a.target));
        }
    }

    std::unordered_map<Valuation, int, VecHash> index;
    std::deque<int> queue;
    auto intern = [&](Valuation v, int parent, const Transition& via) {
        auto [it, fresh] = index.emplace(v, static_cast<int>(ts.states.size()));
        if (fresh) {
            if (ts.states.size() >= limits.max_states)
                throw ResourceError("state cap of " + std::to_string(limits.max_states) + " exceeded with " +
                                    std::to_string(queue.size()) + " states in the frontier");
            ts.states.push_back(std::move(v));
            ts.out.emplace_back();
            ts.parent.push_back(parent);
            ts.parent_edge.push_back(via);
            queue.push_back(it->second);
        }
        return it->second;
    };
    for (Valuation& v : models(effective_pre(program), program.vars, limits))
        ts.initial.push_back(intern(std::move(v), -1, {}));

    while (!queue.empty()) {
        const int s = queue.front();
        queue.pop_front();
        for (std::size_t c = 0; c < nc; ++c) {
            const Valuation cur = ts.states[static_cast<std::size_t>(s)];
            const auto pcv = static_cast<std::size_t>(cur[static_cast<std::size_t>(ts.pc_slots[c])]);
            const int ai = pcv < at[c].size() ? at[c][pcv] : -1;
            if (ai < 0) continue;
            const AtomicAction& a = ts.actions[static_cast<std::size_t>(ai)];
            const auto pc = static_cast<std::size_t>(a.pc_slot);
            const auto& targets = dest[static_cast<std::size_t>(ai)];
            std::vector<std::pair<Valuation, int>> succ;  // (state, branch)
            switch (a.kind) {
                case ActionKind::Skip: {
                    Valuation v = cur;
                    v[pc] = targets[0];
                    succ.emplace_back(std::move(v), -1);
                    break;
                }
                case ActionKind::Assign: {
                    Valuation v = cur;
                    assign(v, ts.vars, a.assigns);
                    v[pc] = targets[0];
                    succ.emplace_back(std::move(v), -1);
                    break;
                }
                case ActionKind::Atomic: {
                    BodyOutcome r = run_body(*a.body, cur, ts.vars);
                    if (r.blocks) break;
                    for (Valuation& v : r.finals) {
                        v[pc] = targets[0];
                        succ.emplace_back(std::move(v), -1);
                    }
                    break;
                }
                case ActionKind::IfEval:
                case ActionKind::DoEval: {
                    for (std::size_t b = 0; b < a.branches.size(); ++b) {
                        if (!holds(a.branches[b].guard, cur)) continue;
                        Valuation v = cur;
                        v[pc] = targets[b];
                        succ.emplace_back(std::move(v), static_cast<int>(b));
                    }
                    if (a.exit && holds(a.exit->guard, cur)) {
                        Valuation v = cur;
                        v[pc] = targets.back();
                        succ.emplace_back(std::move(v), -1);
                    }
                    break;
                }
            }
            for (auto& [v, branch] : succ) {
                Transition t{-1, static_cast<int>(c), ai, branch};
                t.target = intern(std::move(v), s, t);
                ts.out[static_cast<std::size_t>(s)].push_back(t);
            }
        }
    }
    return ts;
}

// ---------------------------------------------------------------------------
// traces

std::vector<Step> stem_to(const TransitionSystem& ts, int s) {
    std::vector<Step> rev;
    for (int cur = s; cur >= 0; cur = ts.parent[static_cast<std::size_t>(cur)]) {
        const int p = ts.parent[static_cast<std::size_t>(cur)];
        if (p < 0) {
            rev.push_back({-1, {}, cur});
        } else {
            const Transition& t = ts.parent_edge[static_cast<std::size_t>(cur)];
            rev.push_back({t.component, ts.actions[static_cast<std::size_t>(t.action)].site(), cur});
        }
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

namespace {

Step step_of(const TransitionSystem& ts, const Transition& t) {
    return {t.component, ts.actions[static_cast<std::size_t>(t.action)].site(), t.target};
}

// Shortest path from `from` to a state satisfying `goal`, using only
// transitions whose endpoints satisfy `inside`.
std::optional<std::vector<Step>> path(const TransitionSystem& ts, int from, const std::function<bool(int)>& goal,
                                      const std::function<bool(int)>& inside) {
    std::vector<int> prev(ts.size(), -2);
    std::vector<Transition> via(ts.size());
    std::deque<int> q{from};
    prev[static_cast<std::size_t>(from)] = -1;
    while (!q.empty()) {
        const int s = q.front();
        q.pop_front();
        if (goal(s)) {
            std::vector<Step> rev;
            for (int cur = s; prev[static_cast<std::size_t>(cur)] >= 0; cur = prev[static_cast<std::size_t>(cur)])
                rev.push_back(step_of(ts, via[static_cast<std::size_t>(cur)]));
            std::reverse(rev.begin(), rev.end());
            return rev;
        }
        for (const Transition& t : ts.out[static_cast<std::size_t>(s)]) {
            if (!inside(t.target) || prev[static_cast<std::size_t>(t.target)] != -2) continue;
            prev[static_cast<std::size_t>(t.target)] = s;
            via[static_cast<std::size_t>(t.target)] = t;
            q.push_back(t.target);
        }
    }
    return std::nullopt;
}

// Iterative Tarjan over the states with `member[s]`, following only edges
// that stay inside. Returns the component id per state (-1 outside).
std::vector<int> sccs(const TransitionSystem& ts, const std::vector<char>& member, int& count) {
    const std::size_t n = ts.size();
    std::vector<int> idx(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on(n, 0);
    std::vector<int> stack;
    std::vector<std::pair<int, std::size_t>> call;
    int counter = 0;
    count = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (!member[root] || idx[root] >= 0) continue;
        call.emplace_back(static_cast<int>(root), 0);
        while (!call.empty()) {
            auto& [s, k] = call.back();
            const auto su = static_cast<std::size_t>(s);
            if (k == 0 && idx[su] < 0) {
                idx[su] = low[su] = counter++;
                stack.push_back(s);
                on[su] = 1;
            }
            const auto& edges = ts.out[su];
            bool descended = false;
            while (k < edges.size()) {
                const auto t = static_cast<std::size_t>(edges[k].target);
                ++k;
                if (!member[t]) continue;
                if (idx[t] < 0) {
                    call.emplace_back(static_cast<int>(t), 0);
                    descended = true;
                    break;
                }
                if (on[t]) low[su] = std::min(low[su], idx[t]);
            }
            if (descended) continue;
            if (low[su] == idx[su]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on[static_cast<std::size_t>(w)] = 0;
                    comp[static_cast<std::size_t>(w)] = count;
                } while (w != s);
                ++count;
            }
            const int done = s;
            call.pop_back();
            if (!call.empty()) {
                const auto pu = static_cast<std::size_t>(call.back().first);
                low[pu] = std::min(low[pu], low[static_cast<std::size_t>(done)]);
            }
        }
    }
    return comp;
}

}  // namespace

// ---------------------------------------------------------------------------
// queries

OracleResult oracle_unless(const TransitionSystem& ts, const Expr& p, const Expr& q) {
    const Expr pre = ex::land(p, ex::lnot(q));
    const Expr post = ex::lor(p, q);
    for (std::size_t s = 0; s < ts.size(); ++s) {
        if (!holds(pre, ts.states[s])) continue;
        for (const Transition& t : ts.out[s]) {
            if (holds(post, ts.states[static_cast<std::size_t>(t.target)])) continue;
            Trace tr;
            tr.stem = stem_to(ts, static_cast<int>(s));
            tr.focus = static_cast<int>(tr.stem.size()) - 1;
            tr.stem.push_back(step_of(ts, t));
            tr.kind = "transition";
            return {false, std::move(tr)};
        }
    }
    return {};
}

OracleResult oracle_leadsto(const TransitionSystem& ts, const Expr& p, const Expr& q) {
    const std::size_t n = ts.size();
    std::vector<char> avoid(n, 0);
    for (std::size_t s = 0; s < n; ++s) avoid[s] = !holds(q, ts.states[s]);

    int count = 0;
    const std::vector<int> comp = sccs(ts, avoid, count);
    // fair[c]: nontrivial, and each component steps inside or is disabled somewhere
    const std::size_t nc = ts.components.size();
    std::vector<char> nontrivial(static_cast<std::size_t>(count), 0);
    std::vector<std::vector<char>> justified(static_cast<std::size_t>(count), std::vector<char>(nc, 0));
    for (std::size_t s = 0; s < n; ++s) {
        if (!avoid[s]) continue;
        const auto c = static_cast<std::size_t>(comp[s]);
        for (std::size_t k = 0; k < nc; ++k)
            if (!ts.enabled(static_cast<int>(s), static_cast<int>(k))) justified[c][k] = 1;
        for (const Transition& t : ts.out[s])
            if (comp[static_cast<std::size_t>(t.target)] == comp[s]) {
                nontrivial[c] = 1;
                justified[c][static_cast<std::size_t>(t.component)] = 1;
            }
    }
    std::vector<char> fair(static_cast<std::size_t>(count), 0);
    for (std::size_t c = 0; c < static_cast<std::size_t>(count); ++c)
        fair[c] = nontrivial[c] && std::all_of(justified[c].begin(), justified[c].end(), [](char b) { return b; });

    auto bad = [&](int s) {
        const auto su = static_cast<std::size_t>(s);
        return avoid[su] && (ts.out[su].empty() || fair[static_cast<std::size_t>(comp[su])]);
    };
    // backward closure of the bad states inside the Q-avoiding subgraph
    std::vector<std::vector<int>> rev(n);
    for (std::size_t s = 0; s < n; ++s)
        if (avoid[s])
            for (const Transition& t : ts.out[s])
                if (avoid[static_cast<std::size_t>(t.target)])
                    rev[static_cast<std::size_t>(t.target)].push_back(static_cast<int>(s));
    std::vector<char> doomed(n, 0);
    std::deque<int> work;
    for (std::size_t s = 0; s < n; ++s)
        if (bad(static_cast<int>(s))) {
            doomed[s] = 1;
            work.push_back(static_cast<int>(s));
        }
    while (!work.empty()) {
        const int s = work.front();
        work.pop_front();
        for (int r : rev[static_cast<std::size_t>(s)])
            if (!doomed[static_cast<std::size_t>(r)]) {
                doomed[static_cast<std::size_t>(r)] = 1;
                work.push_back(r);
            }
    }
    int start = -1;
    for (std::size_t s = 0; s < n && start < 0; ++s)
        if (doomed[s] && holds(p, ts.states[s])) start = static_cast<int>(s);
    if (start < 0) return {};

    Trace tr;
    tr.stem = stem_to(ts, start);
    tr.focus = static_cast<int>(tr.stem.size()) - 1;
    auto inside = [&](int s) { return avoid[static_cast<std::size_t>(s)] != 0; };
    auto more = path(ts, start, bad, inside);
    tr.stem.insert(tr.stem.end(), more->begin(), more->end());
    const int entry = tr.stem.back().state;
    if (ts.out[static_cast<std::size_t>(entry)].empty()) {
        tr.kind = ts.terminal(entry) ? "terminal" : "deadlock";
        return {false, std::move(tr)};
    }

    // A cycle through the fair component visiting a justification for
    // every process, then back to the entry.
    tr.kind = "fair cycle";
    const int scc = comp[static_cast<std::size_t>(entry)];
    auto in_scc = [&](int s) { return avoid[static_cast<std::size_t>(s)] && comp[static_cast<std::size_t>(s)] == scc; };
    int cur = entry;
    auto go = [&](int to) {
        auto seg = path(ts, cur, [to](int s) { return s == to; }, in_scc);
        tr.cycle.insert(tr.cycle.end(), seg->begin(), seg->end());
        cur = to;
    };
    for (std::size_t k = 0; k < nc; ++k) {
        int disabled_at = -1;
        std::optional<std::pair<int, Transition>> edge;
        for (std::size_t s = 0; s < n && disabled_at < 0 && !edge; ++s) {
            if (!in_scc(static_cast<int>(s))) continue;
            if (!ts.enabled(static_cast<int>(s), static_cast<int>(k))) {
                disabled_at = static_cast<int>(s);
                break;
            }
            for (const Transition& t : ts.out[s])
                if (t.component == static_cast<int>(k) && in_scc(t.target)) {
                    edge = std::make_pair(static_cast<int>(s), t);
                    break;
                }
        }
        if (disabled_at >= 0) {
            go(disabled_at);
        } else {
            go(edge->first);
            tr.cycle.push_back(step_of(ts, edge->second));
            cur = edge->second.target;
        }
    }
    if (cur == entry && tr.cycle.empty()) {
        for (const Transition& t : ts.out[static_cast<std::size_t>(entry)])
            if (in_scc(t.target)) {
                tr.cycle.push_back(step_of(ts, t));
                cur = t.target;
                break;
            }
    }
    if (cur != entry) go(entry);
    return {false, std::move(tr)};
}

OracleResult oracle_invariant(const TransitionSystem& ts, const Expr& p) {
    for (std::size_t s = 0; s < ts.size(); ++s)
        if (!holds(p, ts.states[s])) {
            Trace tr;
            tr.stem = stem_to(ts, static_cast<int>(s));
            tr.focus = static_cast<int>(tr.stem.size()) - 1;
            tr.kind = "state";
            return {false, std::move(tr)};
        }
    return {};
}

OracleResult oracle_postcondition(const TransitionSystem& ts, const Expr& p) {
    for (std::size_t s = 0; s < ts.size(); ++s)
        if (ts.terminal(static_cast<int>(s)) && !holds(p, ts.states[s])) {
            Trace tr;
            tr.stem = stem_to(ts, static_cast<int>(s));
            tr.focus = static_cast<int>(tr.stem.size()) - 1;
            tr.kind = "terminal";
            return {false, std::move(tr)};
        }
    return {};
}

OracleResult oracle_deadlock_free(const TransitionSystem& ts) {
    for (std::size_t s = 0; s < ts.size(); ++s)
        if (ts.out[s].empty() && !ts.terminal(static_cast<int>(s))) {
            Trace tr;
            tr.stem = stem_to(ts, static_cast<int>(s));
            tr.focus = static_cast<int>(tr.stem.size()) - 1;
            tr.kind = "deadlock";
            return {false, std::move(tr)};
        }
    return {};
}

std::vector<AssertionViolation> oracle_assertions(const TransitionSystem& ts, const Program& program) {
    std::vector<AssertionViolation> out;
    for (const auto& [key, asserts] : annotation(program)) {
        const Component& comp = program.components[static_cast<std::size_t>(key.first)];
        const auto slot = static_cast<std::size_t>(comp.pc_slot);
        const Value at = label_index(comp, key.second);
        for (const Expr& a : asserts)
            for (std::size_t s = 0; s < ts.size(); ++s)
                if (ts.states[s][slot] == at && !holds(a, ts.states[s])) {
                    out.push_back({comp.name + "." + key.second, a, static_cast<int>(s)});
                    break;
                }
    }
    return out;
}

bool cycle_is_fair(const TransitionSystem& ts, const Trace& tr) {
    if (tr.cycle.empty() || tr.stem.empty()) return false;
    const int entry = tr.stem.back().state;
    if (tr.cycle.back().state != entry) return false;
    std::vector<int> visited{entry};
    for (const Step& s : tr.cycle) visited.push_back(s.state);
    for (std::size_t k = 0; k < ts.components.size(); ++k) {
        const int c = static_cast<int>(k);
        const bool steps = std::any_of(tr.cycle.begin(), tr.cycle.end(), [c](const Step& s) { return s.component == c; });
        const bool idle = std::any_of(visited.begin(), visited.end(), [&](int s) { return !ts.enabled(s, c); });
        if (!steps && !idle) return false;
    }
    return true;
}

std::vector<std::string> control_state_violations(const TransitionSystem& ts, const Program& program) {
    std::vector<std::string> out;
    for (const Component& c : program.components) {
        std::vector<std::string> sorted = c.labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            out.push_back("component " + c.name + " has a repeated label");
    }
    for (std::size_t s = 0; s < ts.size(); ++s) {
        const Valuation& v = ts.states[s];
        for (std::size_t c = 0; c < program.components.size(); ++c) {
            const Value pc = v[static_cast<std::size_t>(ts.pc_slots[c])];
            if (pc < 0 || pc >= static_cast<Value>(program.components[c].labels.size()))
                out.push_back("state " + std::to_string(s) + ": pc." + ts.components[c] + " names no control point");
        }
        for (const Transition& t : ts.out[s])
            for (std::size_t c = 0; c < ts.pc_slots.size(); ++c) {
                if (static_cast<int>(c) == t.component) continue;
                const auto slot = static_cast<std::size_t>(ts.pc_slots[c]);
                if (ts.states[static_cast<std::size_t>(t.target)][slot] != v[slot])
                    out.push_back("state " + std::to_string(s) + ": a step of " + ts.components[static_cast<std::size_t>(t.component)] +
                                  " moved pc." + ts.components[c]);
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// uninstrumented semantics

namespace {

using Cont = std::vector<const Stmt*>;  // back() runs next

void normalise(Cont& k) {
    while (!k.empty() && k.back()->kind == StmtKind::Seq) {
        const Stmt* s = k.back();
        k.pop_back();
        for (auto it = s->kids.rbegin(); it != s->kids.rend(); ++it) k.push_back(&*it);
    }
}

Cont push(Cont k, const Stmt* s) {
    k.push_back(s);
    normalise(k);
    return k;
}

Cont pop(Cont k) {
    k.pop_back();
    normalise(k);
    return k;
}

}  // namespace

RawSystem build_raw_state_space(const Program& program, const Limits& limits) {
    RawSystem rs;
    const VarTable& vars = program.vars;
    std::vector<int> data_slots;
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (!vars[i].is_pc) data_slots.push_back(static_cast<int>(i));
    const std::size_t nc = program.components.size();

    struct RawState {
        Valuation v;  // full width; pc slots unused
        std::vector<Cont> control;
    };
    std::vector<RawState> states;
    std::unordered_map<std::vector<std::intptr_t>, int, VecHash> index;
    std::deque<int> queue;
    auto key = [&](const RawState& r) {
        std::vector<std::intptr_t> k;
        for (int s : data_slots) k.push_back(static_cast<std::intptr_t>(r.v[static_cast<std::size_t>(s)]));
        for (const Cont& c : r.control) {
            k.push_back(-1);
            for (const Stmt* s : c) k.push_back(reinterpret_cast<std::intptr_t>(s));
        }
        return k;
    };
    auto intern = [&](RawState r) {
        auto [it, fresh] = index.emplace(key(r), static_cast<int>(states.size()));
        if (fresh) {
            if (states.size() >= limits.max_states)
                throw ResourceError("state cap of " + std::to_string(limits.max_states) + " exceeded");
            Valuation d;
            for (int s : data_slots) d.push_back(r.v[static_cast<std::size_t>(s)]);
            rs.data.push_back(std::move(d));
            rs.out.emplace_back();
            bool done = true;
            for (const Cont& c : r.control) done = done && c.empty();
            rs.terminal.push_back(done);
            states.push_back(std::move(r));
            queue.push_back(it->second);
        }
        return it->second;
    };
    std::vector<Cont> start;
    for (const Component& c : program.components) start.push_back(push({}, &c.body));
    for (Valuation& v : models(effective_pre(program), vars, limits)) {
        const std::size_t before = states.size();
        const int id = intern({std::move(v), start});
        if (states.size() > before) rs.initial.push_back(id);
    }
    while (!queue.empty()) {
        const int s = queue.front();
        queue.pop_front();
        for (std::size_t c = 0; c < nc; ++c) {
            const RawState cur = states[static_cast<std::size_t>(s)];
            const Cont& k = cur.control[c];
            if (k.empty()) continue;
            const Stmt& st = *k.back();
            std::vector<RawState> succ;
            auto with = [&](Valuation v, Cont next) {
                RawState r{std::move(v), cur.control};
                r.control[c] = std::move(next);
                succ.push_back(std::move(r));
            };
            switch (st.kind) {
                case StmtKind::Skip: with(cur.v, pop(k)); break;
                case StmtKind::Assign: {
                    Valuation v = cur.v;
                    assign(v, vars, st.assigns);
                    with(std::move(v), pop(k));
                    break;
                }
                case StmtKind::Atomic: {
                    BodyOutcome r = run_body(st.kids.at(0), cur.v, vars);
                    if (r.blocks) break;
                    for (Valuation& v : r.finals) with(std::move(v), pop(k));
                    break;
                }
                case StmtKind::If:
                case StmtKind::Do: {
                    bool any = false;
                    for (std::size_t b = 0; b < st.guards.size(); ++b) {
                        if (!holds(st.guards[b], cur.v)) continue;
                        any = true;
                        Cont next = st.kind == StmtKind::If ? pop(k) : k;
                        with(cur.v, push(std::move(next), &st.kids[b]));
                    }
                    if (st.kind == StmtKind::Do && !any) with(cur.v, pop(k));
                    break;
                }
                case StmtKind::Seq: break;  // normalised away
            }
            for (RawState& r : succ) {
                const int t = intern(std::move(r));
                rs.out[static_cast<std::size_t>(s)].emplace_back(static_cast<int>(c), t);
            }
        }
    }
    return rs;
}

std::string check_pc_projection(const TransitionSystem& ts, const Program& program, const Limits& limits) {
    const RawSystem rs = build_raw_state_space(program, limits);
    std::vector<int> data_slots;
    for (std::size_t i = 0; i < ts.vars.size(); ++i)
        if (!ts.vars[i].is_pc) data_slots.push_back(static_cast<int>(i));
    auto data = [&](int s) {
        Valuation d;
        for (int k : data_slots) d.push_back(ts.states[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)]);
        return d;
    };
    if (rs.data.size() != ts.size())
        return "state counts differ: " + std::to_string(ts.size()) + " with counters, " +
               std::to_string(rs.data.size()) + " without";
    if (rs.initial.size() != ts.initial.size()) return "initial state counts differ";
    std::vector<int> fwd(ts.size(), -1), back(rs.data.size(), -1);
    std::deque<std::pair<int, int>> work;
    auto bind = [&](int a, int b) -> std::string {
        if (fwd[static_cast<std::size_t>(a)] < 0 && back[static_cast<std::size_t>(b)] < 0) {
            fwd[static_cast<std::size_t>(a)] = b;
            back[static_cast<std::size_t>(b)] = a;
            work.emplace_back(a, b);
            return {};
        }
        if (fwd[static_cast<std::size_t>(a)] == b && back[static_cast<std::size_t>(b)] == a) return {};
        return "state " + std::to_string(a) + " maps to two raw states";
    };
    for (std::size_t i = 0; i < ts.initial.size(); ++i) {
        if (data(ts.initial[i]) != rs.data[static_cast<std::size_t>(rs.initial[i])]) return "initial states differ";
        if (auto e = bind(ts.initial[i], rs.initial[i]); !e.empty()) return e;
    }
    while (!work.empty()) {
        const auto [a, b] = work.front();
        work.pop_front();
        const auto& ea = ts.out[static_cast<std::size_t>(a)];
        const auto& eb = rs.out[static_cast<std::size_t>(b)];
        if (ts.terminal(a) != rs.terminal[static_cast<std::size_t>(b)])
            return "termination differs at state " + std::to_string(a);
        if (ea.size() != eb.size()) return "transition counts differ at state " + std::to_string(a);
        for (std::size_t k = 0; k < ea.size(); ++k) {
            if (ea[k].component != eb[k].first) return "step owners differ at state " + std::to_string(a);
            if (data(ea[k].target) != rs.data[static_cast<std::size_t>(eb[k].second)])
                return "successor data differ at state " + std::to_string(a);
            if (auto e = bind(ea[k].target, eb[k].second); !e.empty()) return e;
        }
    }
    return {};
}

std::string render_trace(const TransitionSystem& ts, const Trace& tr) {
    std::ostringstream os;
    auto diff = [&](int from, int to) {
        const Valuation& a = ts.states[static_cast<std::size_t>(from)];
        const Valuation& b = ts.states[static_cast<std::size_t>(to)];
        std::vector<int> changed;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) changed.push_back(static_cast<int>(i));
        return changed.empty() ? std::string("(no change)") : ts.vars.render(b, changed);
    };
    int prev = -1;
    for (std::size_t i = 0; i < tr.stem.size(); ++i) {
        const Step& s = tr.stem[i];
        if (s.component < 0)
            os << "  start  " << ts.render(s.state);
        else
            os << "  " << s.action << "  " << diff(prev, s.state);
        if (static_cast<int>(i) == tr.focus) os << "   <- here";
        os << "\n";
        prev = s.state;
    }
    if (!tr.cycle.empty()) {
        os << "  repeat:\n";
        for (const Step& s : tr.cycle) {
            os << "    " << s.action << "  " << diff(prev, s.state) << "\n";
            prev = s.state;
        }
    }
    if (tr.kind == "deadlock") os << "  (no action enabled)\n";
    if (tr.kind == "terminal" && tr.cycle.empty() && !tr.stem.empty()) os << "  (terminated)\n";
    return os.str();
}

}  // namespace ogp
