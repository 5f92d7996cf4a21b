#include "ogp/report.hpp"

#include <algorithm>
#include <sstream>

#include "ogp/frontend.hpp"

namespace ogp {

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

// One line per step, for the machine format.
std::string flat_trace(const TransitionSystem& ts, const Trace& tr) {
    std::vector<std::string> steps;
    for (const Step& s : tr.stem) steps.push_back((s.component < 0 ? "start" : s.action) + " " + ts.render(s.state));
    for (const Step& s : tr.cycle) steps.push_back("repeat " + s.action + " " + ts.render(s.state));
    return join(steps, " ; ");
}

const char* kind_name(PropertyKind k) {
    switch (k) {
        case PropertyKind::Unless: return "unless";
        case PropertyKind::LeadsTo: return "leadsto";
        case PropertyKind::Postcondition: return "postcondition";
        case PropertyKind::Invariant: return "invariant";
        case PropertyKind::DeadlockFree: return "deadlockfree";
    }
    return "";
}

}  // namespace

std::string render_obligations(const Program& program, const std::vector<Obligation>& obs, Format format) {
    std::ostringstream os;
    if (format == Format::Machine) {
        for (const Obligation& o : obs) {
            os << "id: " << o.id << "\nkind: " << to_string(o.kind) << "\nverdict: " << to_string(o.verdict)
               << "\nrule: " << o.rule << "\n";
            if (!o.property.empty()) os << "property: " << o.property << "\n";
            if (!o.node.empty()) os << "node: " << o.node << "\n";
            if (!o.sites.empty()) os << "sites: " << join(o.sites, " ") << "\n";
            os << "formula: " << to_string(o.formula) << "\n";
            if (o.counterexample) os << "counterexample: " << program.vars.render(*o.counterexample, o.relevant) << "\n";
            os << "\n";
        }
        return os.str();
    }
    std::string last_property = "\x01";
    std::size_t valid = 0;
    for (const Obligation& o : obs) {
        if (o.property != last_property) {
            os << (o.property.empty() ? "annotation" : "property " + o.property) << "\n";
            last_property = o.property;
        }
        const std::size_t depth = o.node.empty() ? 0 : std::count(o.node.begin(), o.node.end(), '.');
        os << "  " << std::string(2 * depth, ' ');
        if (!o.node.empty()) os << "[" << o.node << "] ";
        os << o.id << "  " << to_string(o.verdict) << "  " << o.rule << "\n";
        if (o.verdict == Verdict::Valid) {
            ++valid;
            continue;
        }
        os << "  " << std::string(2 * depth, ' ') << "    " << to_string(o.formula) << "\n";
        if (o.counterexample)
            os << "  " << std::string(2 * depth, ' ') << "    counterexample: "
               << program.vars.render(*o.counterexample, o.relevant) << "\n";
    }
    os << valid << "/" << obs.size() << " obligations valid\n";
    return os.str();
}

std::vector<PropertyVerdict> oracle_properties(const TransitionSystem& ts, const Program& program,
                                               const std::string& only) {
    std::vector<PropertyVerdict> out;
    for (const Property& p : program.properties) {
        if (!only.empty() && p.name != only) continue;
        PropertyVerdict v{&p, {}};
        switch (p.kind) {
            case PropertyKind::Unless: v.result = oracle_unless(ts, p.p, p.q); break;
            case PropertyKind::LeadsTo: v.result = oracle_leadsto(ts, p.p, p.q); break;
            case PropertyKind::Postcondition: v.result = oracle_postcondition(ts, p.p); break;
            case PropertyKind::Invariant: v.result = oracle_invariant(ts, p.p); break;
            case PropertyKind::DeadlockFree: v.result = oracle_deadlock_free(ts); break;
        }
        out.push_back(std::move(v));
    }
    if (!only.empty() && out.empty()) throw ContractError("no property named " + only);
    return out;
}

std::string render_oracle(const TransitionSystem& ts, const std::vector<PropertyVerdict>& verdicts,
                          const std::vector<AssertionViolation>& violations, Format format) {
    std::ostringstream os;
    if (format == Format::Machine) {
        os << "states: " << ts.size() << "\ntransitions: " << ts.transition_count() << "\n\n";
        for (const PropertyVerdict& v : verdicts) {
            os << "property: " << v.property->name << "\nkind: " << kind_name(v.property->kind)
               << "\nholds: " << (v.result.holds ? "true" : "false") << "\n";
            if (v.result.witness)
                os << "witness: " << v.result.witness->kind << "\ntrace: " << flat_trace(ts, *v.result.witness) << "\n";
            os << "\n";
        }
        for (const AssertionViolation& a : violations)
            os << "violation: " << a.site << "\nassertion: " << to_string(a.assertion)
               << "\nstate: " << ts.render(a.state) << "\n\n";
        return os.str();
    }
    os << ts.size() << " reachable states, " << ts.transition_count() << " transitions\n";
    for (const PropertyVerdict& v : verdicts) {
        os << print(*v.property) << "  " << (v.result.holds ? "holds" : "fails") << "\n";
        if (v.result.witness) os << "  " << v.result.witness->kind << ":\n" << render_trace(ts, *v.result.witness);
    }
    for (const AssertionViolation& a : violations)
        os << "assertion {" << to_string(a.assertion) << "} at " << a.site << " fails in " << ts.render(a.state) << "\n";
    return os.str();
}

std::string render_split(const SplitResult& split, const HarnessReport& harness, Format format) {
    std::ostringstream os;
    if (format == Format::Machine) {
        os << "inserted: " << split.inserted << "\nside_conditions: " << (split.ok() ? "valid" : "invalid")
           << "\nequivalent: " << (harness.equivalent() ? "true" : "false") << "\n\n";
        os << render_obligations(split.program, split.side_conditions, format);
        for (const HarnessLine& l : harness.lines)
            os << "compare: " << l.what << "\nbefore: " << (l.before ? "true" : "false")
               << "\nafter: " << (l.after ? "true" : "false") << "\n\n";
        return os.str();
    }
    os << print(split.program, {.all_labels = true}) << "\n";
    os << "side conditions ({B} at " << split.inserted << " globally correct):\n";
    os << render_obligations(split.program, split.side_conditions, format);
    const auto div = harness.divergences();
    os << "oracle comparison: " << harness.lines.size() << " verdicts, " << div.size() << " divergent\n";
    for (const HarnessLine& l : div)
        os << "  " << l.what << ": " << (l.before ? "true" : "false") << " before, " << (l.after ? "true" : "false")
           << " after\n";
    return os.str();
}

std::vector<Record> parse_records(std::string_view text) {
    std::vector<Record> out;
    Record cur;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
            continue;
        }
        const auto colon = line.find(": ");
        if (colon == std::string::npos) continue;
        cur[line.substr(0, colon)] = line.substr(colon + 2);
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

}  // namespace ogp
