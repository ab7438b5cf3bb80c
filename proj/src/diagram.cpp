#include "sq/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace sq {

std::size_t PassCode::pass_count() const
{
    std::size_t total = 0;
    for (const auto& c : components)
        total += c.size();
    return total;
}

ClassicalCode::ClassicalCode(PassCode code) : code_(std::move(code))
{
    for (const auto& comp : code_.components)
        for (const auto& p : comp)
            if (p.kind != CrossingKind::Classical && p.kind != CrossingKind::Virtual)
                throw InvalidCode("classical code contains non-classical crossing " + crossing_name(key(p)));
    validate_code(code_);
}

bool sup_like(const Pass& p)
{
    switch (p.role) {
    case Role::Sup:
    case Role::VPlus: return true;
    case Role::Sub:
    case Role::VMinus: return false;
    case Role::Under: return p.sign > 0;
    case Role::Over: return p.sign < 0;
    }
    return false;
}

namespace {

char kind_letter(CrossingKind k)
{
    switch (k) {
    case CrossingKind::Flat: return 'F';
    case CrossingKind::Singular: return 'S';
    case CrossingKind::Virtual: return 'V';
    case CrossingKind::Classical: return 'C';
    }
    return '?';
}

std::string role_text(const Pass& p)
{
    switch (p.role) {
    case Role::Sup: return "sup";
    case Role::Sub: return "sub";
    case Role::VPlus: return "v+";
    case Role::VMinus: return "v-";
    case Role::Over: return p.sign > 0 ? "over+" : "over-";
    case Role::Under: return p.sign > 0 ? "under+" : "under-";
    }
    return "?";
}

Pass parse_pass(int line, const std::string& token)
{
    auto fail = [&](const std::string& why) { return ParseError(line, "bad pass '" + token + "': " + why); };
    if (token.size() < 4)
        throw fail("too short");
    Pass p{CrossingKind::Flat, 0, Role::Sup, 0};
    switch (token[0]) {
    case 'F': p.kind = CrossingKind::Flat; break;
    case 'S': p.kind = CrossingKind::Singular; break;
    case 'V': p.kind = CrossingKind::Virtual; break;
    case 'C': p.kind = CrossingKind::Classical; break;
    default: throw fail("kind must be one of F, S, V, C");
    }
    auto dot = token.find('.');
    if (dot == std::string::npos || dot == 1)
        throw fail("expected <Kind><id>.<role>");
    std::string digits = token.substr(1, dot - 1);
    if (! std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }) || digits.size() > 9)
        throw fail("crossing id must be a number");
    p.id = std::stoi(digits);
    std::string role = token.substr(dot + 1);
    const bool planar = p.kind == CrossingKind::Flat || p.kind == CrossingKind::Singular;
    if (planar && role == "sup")
        p.role = Role::Sup;
    else if (planar && role == "sub")
        p.role = Role::Sub;
    else if (p.kind == CrossingKind::Virtual && role == "v+")
        p.role = Role::VPlus;
    else if (p.kind == CrossingKind::Virtual && role == "v-")
        p.role = Role::VMinus;
    else if (p.kind == CrossingKind::Classical && (role == "over+" || role == "over-" || role == "under+" || role == "under-")) {
        p.role = role[0] == 'o' ? Role::Over : Role::Under;
        p.sign = role.back() == '+' ? 1 : -1;
    }
    else
        throw fail("role '" + role + "' does not fit crossing kind " + std::string(1, token[0]));
    return p;
}

Role partner_role(Role r)
{
    switch (r) {
    case Role::Sup: return Role::Sub;
    case Role::Sub: return Role::Sup;
    case Role::VPlus: return Role::VMinus;
    case Role::VMinus: return Role::VPlus;
    case Role::Over: return Role::Under;
    case Role::Under: return Role::Over;
    }
    return r;
}

std::string missing_role_name(Role r)
{
    switch (r) {
    case Role::Sup: return "sup";
    case Role::Sub: return "sub";
    case Role::VPlus: return "v+";
    case Role::VMinus: return "v-";
    case Role::Over: return "over";
    case Role::Under: return "under";
    }
    return "?";
}

std::string label_for(std::size_t i)
{
    std::string s;
    ++i;
    while (i > 0) {
        --i;
        s.insert(s.begin(), static_cast<char>('a' + i % 26));
        i /= 26;
    }
    return s;
}

} // namespace

std::string crossing_name(CrossingKey k) { return std::string(1, kind_letter(k.kind)) + std::to_string(k.id); }

std::string pass_text(const Pass& p) { return crossing_name(key(p)) + "." + role_text(p); }

void validate_code(const PassCode& code)
{
    std::map<CrossingKey, std::vector<Pass>> seen;
    for (const auto& comp : code.components)
        for (const auto& p : comp)
            seen[key(p)].push_back(p);
    for (const auto& [k, passes] : seen) {
        const std::string name = crossing_name(k);
        if (passes.size() == 1)
            throw InvalidCode("crossing " + name + " lacks its " + missing_role_name(partner_role(passes[0].role)) + " pass");
        if (passes.size() > 2)
            throw InvalidCode("crossing " + name + " occurs " + std::to_string(passes.size()) + " times");
        if (passes[1].role != partner_role(passes[0].role))
            throw InvalidCode("crossing " + name + " has two " + missing_role_name(passes[0].role) + " passes");
        if (k.kind == CrossingKind::Classical && passes[0].sign != passes[1].sign)
            throw InvalidCode("crossing " + name + " has inconsistent signs");
    }
}

PassCode parse_code(const std::string& text)
{
    PassCode code;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream words(line);
        std::string head;
        if (! (words >> head))
            continue;
        if (head != "comp:")
            throw ParseError(number, "expected 'comp:' at the start of a component line");
        std::vector<Pass> comp;
        std::string token;
        while (words >> token)
            comp.push_back(parse_pass(number, token));
        code.components.push_back(std::move(comp));
    }
    if (code.components.empty())
        throw ParseError(0, "code has no components");
    validate_code(code);
    return code;
}

ClassicalCode parse_classical(const std::string& text) { return ClassicalCode(parse_code(text)); }

std::string format_code(const PassCode& code)
{
    std::ostringstream out;
    for (const auto& comp : code.components) {
        out << "comp:";
        for (const auto& p : comp)
            out << ' ' << pass_text(p);
        out << '\n';
    }
    return out.str();
}

Presentation extract_relations(const PassCode& code)
{
    validate_code(code);
    Presentation pres;
    // Generator index of the semiarc entering each pass.
    std::vector<std::vector<int>> entering(code.components.size());
    struct Occurrence {
        Pass pass;
        int in;
        int out;
    };
    std::map<CrossingKey, std::vector<Occurrence>> at;
    std::vector<CrossingKey> first_seen;

    for (std::size_t c = 0; c < code.components.size(); ++c) {
        const auto& comp = code.components[c];
        if (comp.empty()) {
            pres.generators.push_back(label_for(pres.generators.size()));
            continue;
        }
        const int base = static_cast<int>(pres.generators.size());
        for (std::size_t i = 0; i < comp.size(); ++i)
            pres.generators.push_back(label_for(pres.generators.size()));
        const int len = static_cast<int>(comp.size());
        for (int i = 0; i < len; ++i) {
            const Pass& p = comp[static_cast<std::size_t>(i)];
            if (p.kind == CrossingKind::Classical)
                throw InvalidCode("classical crossing " + crossing_name(key(p)) + " must be flattened before extraction");
            auto k = key(p);
            if (! at.count(k))
                first_seen.push_back(k);
            at[k].push_back({p, base + i, base + (i + 1) % len});
        }
    }

    for (const auto& k : first_seen) {
        const auto& occ = at[k];
        if (k.kind == CrossingKind::Virtual) {
            for (const auto& o : occ)
                if (o.pass.role == Role::VPlus)
                    pres.relations.push_back({RelationKind::V, o.in, -1, o.out});
            for (const auto& o : occ)
                if (o.pass.role == Role::VMinus)
                    pres.relations.push_back({RelationKind::V, o.out, -1, o.in});
            continue;
        }
        const Occurrence& sup = occ[0].pass.role == Role::Sup ? occ[0] : occ[1];
        const Occurrence& sub = occ[0].pass.role == Role::Sup ? occ[1] : occ[0];
        const bool singular = k.kind == CrossingKind::Singular;
        pres.relations.push_back({singular ? RelationKind::HUp : RelationKind::Up, sup.in, sub.in, sup.out});
        pres.relations.push_back({singular ? RelationKind::HDn : RelationKind::Dn, sub.in, sup.in, sub.out});
    }
    return pres;
}

PassCode normalize(const PassCode& code)
{
    PassCode out = code;
    for (auto& comp : out.components) {
        if (comp.size() < 2)
            continue;
        std::vector<Pass> best = comp;
        std::vector<Pass> rotated = comp;
        for (std::size_t r = 1; r < comp.size(); ++r) {
            std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
            if (rotated < best)
                best = rotated;
        }
        comp = std::move(best);
    }
    std::sort(out.components.begin(), out.components.end());
    return out;
}

namespace {

Pass flatten_pass(const Pass& p)
{
    if (p.kind != CrossingKind::Classical)
        return p;
    return {CrossingKind::Flat, p.id, sup_like(p) ? Role::Sup : Role::Sub, 0};
}

std::vector<Pass> flatten_passes(const std::vector<Pass>& passes)
{
    std::vector<Pass> out;
    out.reserve(passes.size());
    for (const auto& p : passes)
        out.push_back(flatten_pass(p));
    return out;
}

const std::vector<Pass>& single_component(const ClassicalCode& k)
{
    if (k.code().components.size() != 1)
        throw InvalidCode("expected a one-component code");
    return k.code().components[0];
}

std::pair<std::size_t, std::size_t> classical_positions(const std::vector<Pass>& comp, int id)
{
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < comp.size(); ++i)
        if (comp[i].id == id && comp[i].kind == CrossingKind::Classical)
            at.push_back(i);
    if (at.size() != 2)
        throw InvalidCode("no classical crossing C" + std::to_string(id));
    return {at[0], at[1]};
}

} // namespace

PassCode flatten(const ClassicalCode& k)
{
    PassCode out;
    for (const auto& comp : k.code().components)
        out.components.push_back(flatten_passes(comp));
    return out;
}

PassCode smooth_at(const ClassicalCode& k, int id)
{
    const auto& comp = single_component(k);
    auto [i, j] = classical_positions(comp, id);
    std::vector<Pass> inner(comp.begin() + static_cast<std::ptrdiff_t>(i + 1), comp.begin() + static_cast<std::ptrdiff_t>(j));
    std::vector<Pass> outer(comp.begin() + static_cast<std::ptrdiff_t>(j + 1), comp.end());
    outer.insert(outer.end(), comp.begin(), comp.begin() + static_cast<std::ptrdiff_t>(i));
    PassCode out;
    out.components.push_back(flatten_passes(inner));
    out.components.push_back(flatten_passes(outer));
    return out;
}

PassCode glue_at(const ClassicalCode& k, int id)
{
    const auto& comp = single_component(k);
    classical_positions(comp, id);
    PassCode out = flatten(k);
    for (auto& p : out.components[0])
        if (p.kind == CrossingKind::Flat && p.id == id)
            p.kind = CrossingKind::Singular;
    return out;
}

PassCode glue_kink(const ClassicalCode& k)
{
    single_component(k);
    PassCode out = flatten(k);
    auto& comp = out.components[0];
    comp.insert(comp.begin(), {Pass{CrossingKind::Singular, 1, Role::Sup, 0}, Pass{CrossingKind::Singular, 1, Role::Sub, 0}});
    return out;
}

PassCode disjoint_unknot(const PassCode& code)
{
    PassCode out = code;
    out.components.emplace_back();
    return out;
}

ClassicalCode mirror(const ClassicalCode& k)
{
    PassCode out = k.code();
    for (auto& comp : out.components)
        for (auto& p : comp)
            if (p.kind == CrossingKind::Classical) {
                p.role = p.role == Role::Over ? Role::Under : Role::Over;
                p.sign = -p.sign;
            }
    return ClassicalCode(out);
}

std::vector<int> classical_crossings(const ClassicalCode& k)
{
    std::vector<int> ids;
    for (const auto& comp : k.code().components)
        for (const auto& p : comp)
            if (p.kind == CrossingKind::Classical && std::find(ids.begin(), ids.end(), p.id) == ids.end())
                ids.push_back(p.id);
    return ids;
}

PassCode builtin_code(const std::string& name)
{
    if (name == "unknot")
        return parse_code("comp:\n");
    if (name == "singular_unknot_1")
        return parse_code("comp: S1.sup S1.sub\n");
    if (name == "triple_crazy_trefoil")
        return parse_code("comp: S1.sup F1.sub S1.sub F1.sup\n");
    if (name == "flat_kishino")
        return parse_code("comp: F1.sup F2.sup F1.sub F2.sub F3.sup F4.sup F3.sub F4.sub\n");
    if (name == "flat_virtual_hopf")
        return parse_code("comp: F1.sup V1.v-\ncomp: F1.sub V1.v+\n");
    std::string count;
    if (name.rfind("unlink:", 0) == 0)
        count = name.substr(7);
    else if (name.rfind("unlink(", 0) == 0 && name.back() == ')')
        count = name.substr(7, name.size() - 8);
    if (! count.empty() && std::all_of(count.begin(), count.end(), [](unsigned char c) { return std::isdigit(c); })
        && std::stoi(count) >= 1) {
        PassCode code;
        code.components.resize(static_cast<std::size_t>(std::stoi(count)));
        return code;
    }
    throw ParseError(0, "unknown builtin code '" + name + "'");
}

std::vector<std::string> builtin_code_names()
{
    return {"unknot", "unlink(k)", "singular_unknot_1", "triple_crazy_trefoil", "flat_kishino", "flat_virtual_hopf"};
}

} // namespace sq
