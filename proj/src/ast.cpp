#include "ogp/ast.hpp"

namespace ogp {

int Program::component_index(const std::string& n) const {
    for (std::size_t i = 0; i < components.size(); ++i)
        if (components[i].name == n) return static_cast<int>(i);
    return -1;
}

const Property* Program::property(const std::string& n) const {
    for (const Property& p : properties)
        if (p.name == n) return &p;
    return nullptr;
}

const ProofScript* Program::proof(const std::string& n) const {
    for (const ProofScript& p : proofs)
        if (p.property == n) return &p;
    return nullptr;
}

namespace {

void collect(const Stmt& s, int comp, Annotation& out) {
    if (!s.asserts.empty()) {
        auto& v = out[{comp, s.init}];
        v.insert(v.end(), s.asserts.begin(), s.asserts.end());
    }
    if (s.kind == StmtKind::Atomic) return;  // bodies carry no control points
    for (const Stmt& k : s.kids) collect(k, comp, out);
    if (!s.post_asserts.empty()) {
        auto& v = out[{comp, s.fin}];
        v.insert(v.end(), s.post_asserts.begin(), s.post_asserts.end());
    }
}

}  // namespace

Annotation annotation(const Program& program) {
    Annotation out;
    for (std::size_t c = 0; c < program.components.size(); ++c)
        collect(program.components[c].body, static_cast<int>(c), out);
    return out;
}

Expr pc_at(const Program& program, int component, const std::string& label) {
    const Component& c = program.components.at(static_cast<std::size_t>(component));
    Value index = -1;
    for (std::size_t i = 0; i < c.labels.size(); ++i)
        if (c.labels[i] == label) index = static_cast<Value>(i);
    if (index < 0 || c.pc_slot < 0) throw ContractError("no label " + c.name + "." + label);
    return ex::eq(ex::var(c.pc_slot, "pc." + c.name), ex::label(c.name, label, index));
}

Expr effective_pre(const Program& program) {
    std::vector<Expr> parts;
    if (program.pre) parts.push_back(program.pre);
    for (std::size_t c = 0; c < program.components.size(); ++c)
        parts.push_back(pc_at(program, static_cast<int>(c), program.components[c].initial));
    return ex::conj(parts);
}

}  // namespace ogp
