#include "sq/present.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <thread>

namespace sq {

std::string relation_kind_name(RelationKind k)
{
    switch (k) {
    case RelationKind::Up: return "up";
    case RelationKind::Dn: return "dn";
    case RelationKind::HUp: return "hup";
    case RelationKind::HDn: return "hdn";
    case RelationKind::V: return "v";
    }
    return "?";
}

bool Presentation::uses_hat() const
{
    return std::any_of(relations.begin(), relations.end(),
        [](const Relation& r) { return r.kind == RelationKind::HUp || r.kind == RelationKind::HDn; });
}

bool Presentation::uses_virtual() const
{
    return std::any_of(relations.begin(), relations.end(), [](const Relation& r) { return r.kind == RelationKind::V; });
}

std::string Presentation::to_text() const
{
    std::ostringstream out;
    out << "gens:";
    for (const auto& g : generators)
        out << ' ' << g;
    out << '\n';
    for (const auto& r : relations) {
        out << relation_kind_name(r.kind) << '(' << generators[static_cast<std::size_t>(r.a)];
        if (r.kind != RelationKind::V)
            out << ',' << generators[static_cast<std::size_t>(r.b)];
        out << ")=" << generators[static_cast<std::size_t>(r.c)] << '\n';
    }
    return out.str();
}

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool valid_label(const std::string& s)
{
    return ! s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

struct RawRelation {
    int line;
    RelationKind kind;
    std::string a, b, c;
};

RawRelation parse_relation(int line, const std::string& stmt)
{
    auto open = stmt.find('(');
    auto close = stmt.find(')');
    auto eq = stmt.find('=');
    if (open == std::string::npos || close == std::string::npos || eq == std::string::npos || ! (open < close && close < eq))
        throw ParseError(line, "expected 'op(a,b)=c' or 'v(a)=b', got '" + stmt + "'");
    std::string op = trim(stmt.substr(0, open));
    RawRelation r{line, RelationKind::Up, {}, {}, {}};
    if (op == "up")
        r.kind = RelationKind::Up;
    else if (op == "dn")
        r.kind = RelationKind::Dn;
    else if (op == "hup")
        r.kind = RelationKind::HUp;
    else if (op == "hdn")
        r.kind = RelationKind::HDn;
    else if (op == "v")
        r.kind = RelationKind::V;
    else
        throw ParseError(line, "unknown relation kind '" + op + "'");

    std::string args = stmt.substr(open + 1, close - open - 1);
    if (! trim(stmt.substr(close + 1, eq - close - 1)).empty())
        throw ParseError(line, "unexpected text between ')' and '='");
    r.c = trim(stmt.substr(eq + 1));
    auto comma = args.find(',');
    if (r.kind == RelationKind::V) {
        if (comma != std::string::npos)
            throw ParseError(line, "v takes one argument");
        r.a = trim(args);
    }
    else {
        if (comma == std::string::npos || args.find(',', comma + 1) != std::string::npos)
            throw ParseError(line, relation_kind_name(r.kind) + " takes two arguments");
        r.a = trim(args.substr(0, comma));
        r.b = trim(args.substr(comma + 1));
        if (! valid_label(r.b))
            throw ParseError(line, "invalid label '" + r.b + "'");
    }
    if (! valid_label(r.a))
        throw ParseError(line, "invalid label '" + r.a + "'");
    if (! valid_label(r.c))
        throw ParseError(line, "invalid label '" + r.c + "'");
    return r;
}

} // namespace

Presentation parse_presentation(const std::string& text)
{
    std::vector<RawRelation> raw;
    std::vector<std::string> declared;
    bool have_decl = false;
    int decl_line = 0;

    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream parts(line);
        std::string stmt;
        while (std::getline(parts, stmt, ';')) {
            stmt = trim(stmt);
            if (stmt.empty())
                continue;
            if (stmt.rfind("gens:", 0) == 0) {
                if (have_decl)
                    throw ParseError(number, "duplicate 'gens:' declaration");
                have_decl = true;
                decl_line = number;
                std::istringstream labels(stmt.substr(5));
                std::string label;
                while (labels >> label) {
                    if (! valid_label(label))
                        throw ParseError(number, "invalid label '" + label + "'");
                    if (std::find(declared.begin(), declared.end(), label) != declared.end())
                        throw ParseError(number, "generator '" + label + "' declared twice");
                    declared.push_back(label);
                }
                continue;
            }
            raw.push_back(parse_relation(number, stmt));
        }
    }

    Presentation p;
    p.generators = declared;
    auto index_of = [&](const std::string& label, int at) {
        auto it = std::find(p.generators.begin(), p.generators.end(), label);
        if (it != p.generators.end())
            return static_cast<int>(it - p.generators.begin());
        if (have_decl)
            throw ParseError(at, "label '" + label + "' is not declared in 'gens:' (line " + std::to_string(decl_line) + ")");
        p.generators.push_back(label);
        return static_cast<int>(p.generators.size() - 1);
    };
    for (const auto& r : raw) {
        Relation rel{r.kind, index_of(r.a, r.line), -1, 0};
        if (r.kind != RelationKind::V)
            rel.b = index_of(r.b, r.line);
        rel.c = index_of(r.c, r.line);
        p.relations.push_back(rel);
    }
    return p;
}

Presentation builtin_presentation(const std::string& name)
{
    // The two-component variant exchanges the outputs of the second
    // crossing; the knot reads b^d=c, d_b=e there.
    if (name == "flat_kishino")
        return parse_presentation("gens: a b c d e f g h\n"
                                  "up(a,c)=b; dn(c,a)=d; up(b,d)=c; dn(d,b)=e\n"
                                  "up(e,g)=f; dn(g,e)=h; up(f,h)=g; dn(h,f)=a\n");
    if (name == "flat_kishino_two_component")
        return parse_presentation("gens: a b c d e f g h\n"
                                  "up(a,c)=b; dn(c,a)=d; up(b,d)=e; dn(d,b)=c\n"
                                  "up(e,g)=f; dn(g,e)=h; up(f,h)=g; dn(h,f)=a\n");
    if (name == "triple_crazy_trefoil")
        return parse_presentation("gens: a b c d\nhup(a,c)=b; hdn(c,a)=d; up(d,b)=a; dn(b,d)=c\n");
    if (name == "singular_unknot_1")
        return parse_presentation("gens: a b\nhup(a,b)=b; hdn(b,a)=a\n");
    if (name == "unknot")
        return parse_presentation("gens: a\n");

    std::string count;
    if (name.rfind("unlink:", 0) == 0)
        count = name.substr(7);
    else if (name.rfind("unlink(", 0) == 0 && name.back() == ')')
        count = name.substr(7, name.size() - 8);
    if (! count.empty() && std::all_of(count.begin(), count.end(), [](unsigned char c) { return std::isdigit(c); })) {
        int k = std::stoi(count);
        if (k < 1)
            throw ParseError(0, "unlink needs at least one component");
        Presentation p;
        for (int i = 1; i <= k; ++i)
            p.generators.push_back("u" + std::to_string(i));
        return p;
    }
    throw ParseError(0, "unknown builtin presentation '" + name + "'");
}

std::vector<std::string> builtin_presentation_names()
{
    return {"flat_kishino", "flat_kishino_two_component", "triple_crazy_trefoil", "singular_unknot_1", "unknot", "unlink(k)"};
}

std::string polynomial_text(const std::map<int, std::uint64_t>& terms)
{
    std::string out;
    for (const auto& [exponent, coefficient] : terms) {
        if (coefficient == 0)
            continue;
        if (! out.empty())
            out += " + ";
        if (coefficient != 1 || exponent == 0)
            out += std::to_string(coefficient);
        if (exponent >= 1)
            out += 'z';
        if (exponent >= 2)
            out += '^' + std::to_string(exponent);
    }
    return out.empty() ? "0" : out;
}

namespace {

// Flattened lookup tables; index (x, y) -> x * (n + 1) + y, 0 row/column unused.
struct Ops {
    int n = 0;
    std::vector<int> up, dn, hup, hdn, upinv, dninv;
    std::vector<int> v, vinv;

    int at(const std::vector<int>& t, int x, int y) const { return t[static_cast<std::size_t>(x * (n + 1) + y)]; }
};

Ops build_ops(const Presentation& p, const StructureBundle& b)
{
    if (p.uses_hat() && ! b.singular)
        throw MissingExtension("presentation has singular-crossing relations but the bundle has no singular extension");
    Ops ops;
    const int n = ops.n = b.order();
    const std::size_t size = static_cast<std::size_t>((n + 1) * (n + 1));
    ops.up.assign(size, 0);
    ops.dn.assign(size, 0);
    ops.hup.assign(size, 0);
    ops.hdn.assign(size, 0);
    ops.upinv.assign(size, 0);
    ops.dninv.assign(size, 0);
    auto idx = [n](int x, int y) { return static_cast<std::size_t>(x * (n + 1) + y); };
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            int u = b.table.up.at(x, y), d = b.table.dn.at(x, y);
            ops.up[idx(x, y)] = u;
            ops.dn[idx(x, y)] = d;
            ops.upinv[idx(u, y)] = x;
            ops.dninv[idx(d, y)] = x;
            if (b.singular) {
                ops.hup[idx(x, y)] = b.singular->hup.at(x, y);
                ops.hdn[idx(x, y)] = b.singular->hdn.at(x, y);
            }
        }
    ops.v.assign(static_cast<std::size_t>(n + 1), 0);
    ops.vinv.assign(static_cast<std::size_t>(n + 1), 0);
    for (int x = 1; x <= n; ++x) {
        int image = b.virt ? b.virt->v(x) : x;
        ops.v[static_cast<std::size_t>(x)] = image;
        ops.vinv[static_cast<std::size_t>(image)] = x;
    }
    return ops;
}

// Backtracking with forward propagation over the relation graph.
class Solver {
public:
    Solver(const Presentation& p, const Ops& ops) : p_(p), ops_(ops), value_(p.generators.size(), 0)
    {
        const std::size_t g = p.generators.size();
        touching_.resize(g);
        for (std::size_t r = 0; r < p.relations.size(); ++r) {
            const auto& rel = p.relations[r];
            std::vector<int> members{rel.a, rel.c};
            if (rel.kind != RelationKind::V)
                members.push_back(rel.b);
            std::sort(members.begin(), members.end());
            members.erase(std::unique(members.begin(), members.end()), members.end());
            for (int m : members)
                touching_[static_cast<std::size_t>(m)].push_back(static_cast<int>(r));
        }
    }

    /// Generator the search branches on first, or -1 when there are none.
    int first_branch() const { return choose(); }

    /// Colorings grouped by image mask, restricted to `first` = `value` when first >= 0.
    void run(int first, int value, std::map<ElementSet, std::uint64_t>& masks)
    {
        masks_ = &masks;
        collect_ = nullptr;
        start(first, value);
    }

    void run_collect(std::vector<std::vector<int>>& out)
    {
        masks_ = nullptr;
        collect_ = &out;
        start(-1, 0);
    }

private:
    void start(int first, int value)
    {
        std::fill(value_.begin(), value_.end(), 0);
        trail_.clear();
        if (first >= 0) {
            if (assign(first, value) && propagate())
                search();
        }
        else
            search();
    }

    int choose() const
    {
        int best = -1;
        std::size_t best_degree = 0;
        for (std::size_t g = 0; g < value_.size(); ++g) {
            if (value_[g] != 0)
                continue;
            if (best < 0 || touching_[g].size() > best_degree) {
                best = static_cast<int>(g);
                best_degree = touching_[g].size();
            }
        }
        return best;
    }

    bool assign(int g, int v)
    {
        value_[static_cast<std::size_t>(g)] = v;
        trail_.push_back(g);
        for (int r : touching_[static_cast<std::size_t>(g)])
            queue_.push_back(r);
        return true;
    }

    // Returns false on conflict; clears the queue either way.
    bool propagate()
    {
        while (! queue_.empty()) {
            int r = queue_.back();
            queue_.pop_back();
            if (! settle(p_.relations[static_cast<std::size_t>(r)])) {
                queue_.clear();
                return false;
            }
        }
        return true;
    }

    // Deduce or check one relation.
    bool settle(const Relation& rel)
    {
        const int a = value_[static_cast<std::size_t>(rel.a)];
        const int c = value_[static_cast<std::size_t>(rel.c)];
        if (rel.kind == RelationKind::V) {
            if (a != 0 && c != 0)
                return ops_.v[static_cast<std::size_t>(a)] == c;
            if (a != 0)
                return assign(rel.c, ops_.v[static_cast<std::size_t>(a)]);
            if (c != 0)
                return assign(rel.a, ops_.vinv[static_cast<std::size_t>(c)]);
            return true;
        }
        const int b = value_[static_cast<std::size_t>(rel.b)];
        const std::vector<int>* forward = nullptr;
        const std::vector<int>* backward = nullptr;
        switch (rel.kind) {
        case RelationKind::Up:
            forward = &ops_.up;
            backward = &ops_.upinv;
            break;
        case RelationKind::Dn:
            forward = &ops_.dn;
            backward = &ops_.dninv;
            break;
        case RelationKind::HUp: forward = &ops_.hup; break;
        case RelationKind::HDn: forward = &ops_.hdn; break;
        case RelationKind::V: break;
        }
        if (a != 0 && b != 0) {
            int out = ops_.at(*forward, a, b);
            if (c != 0)
                return out == c;
            return assign(rel.c, out);
        }
        if (backward && b != 0 && c != 0)
            return assign(rel.a, ops_.at(*backward, c, b));
        return true;
    }

    void undo_to(std::size_t mark)
    {
        while (trail_.size() > mark) {
            value_[static_cast<std::size_t>(trail_.back())] = 0;
            trail_.pop_back();
        }
    }

    void search()
    {
        int g = choose();
        if (g < 0) {
            record();
            return;
        }
        const std::size_t mark = trail_.size();
        for (int v = 1; v <= ops_.n; ++v) {
            if (assign(g, v) && propagate())
                search();
            undo_to(mark);
        }
    }

    void record()
    {
        if (collect_) {
            collect_->push_back(value_);
            return;
        }
        ElementSet mask = 0;
        for (int v : value_)
            mask |= ElementSet{1} << (v - 1);
        ++(*masks_)[mask];
    }

    const Presentation& p_;
    const Ops& ops_;
    std::vector<int> value_;
    std::vector<std::vector<int>> touching_;
    std::vector<int> trail_;
    std::vector<int> queue_;
    std::map<ElementSet, std::uint64_t>* masks_ = nullptr;
    std::vector<std::vector<int>>* collect_ = nullptr;
};

void validate(const Presentation& p, const StructureBundle& b)
{
    const int g = static_cast<int>(p.generators.size());
    for (const auto& r : p.relations) {
        bool bad = r.a < 0 || r.a >= g || r.c < 0 || r.c >= g;
        if (r.kind != RelationKind::V)
            bad = bad || r.b < 0 || r.b >= g;
        if (bad)
            throw ParseError(0, "relation refers to an undeclared generator");
    }
    if (b.order() < 1 || b.order() > 32)
        throw StructureError("bundle order must be within 1..32");
}

std::map<ElementSet, std::uint64_t> image_masks(const Presentation& p, const StructureBundle& b, const SolveOptions& opts)
{
    validate(p, b);
    Ops ops = build_ops(p, b);
    std::map<ElementSet, std::uint64_t> masks;
    Solver root(p, ops);
    const int first = root.first_branch();
    const int jobs = std::max(1, opts.jobs);
    if (first < 0 || jobs == 1) {
        root.run(-1, 0, masks);
        return masks;
    }
    const int n = ops.n;
    std::vector<std::map<ElementSet, std::uint64_t>> parts(static_cast<std::size_t>(n));
    std::vector<std::thread> workers;
    for (int w = 0; w < std::min(jobs, n); ++w)
        workers.emplace_back([&, w] {
            Solver solver(p, ops);
            for (int v = w + 1; v <= n; v += jobs)
                solver.run(first, v, parts[static_cast<std::size_t>(v - 1)]);
        });
    for (auto& t : workers)
        t.join();
    for (const auto& part : parts)
        for (const auto& [mask, count] : part)
            masks[mask] += count;
    return masks;
}

} // namespace

std::uint64_t count_colorings(const Presentation& p, const StructureBundle& b, const SolveOptions& opts)
{
    std::uint64_t total = 0;
    for (const auto& [mask, count] : image_masks(p, b, opts))
        total += count;
    return total;
}

InvariantResult enhanced_invariant(const Presentation& p, const StructureBundle& b, const SolveOptions& opts)
{
    InvariantResult result;
    for (const auto& [mask, count] : image_masks(p, b, opts)) {
        const int size = std::popcount(subclosure(b, mask));
        result.image_sizes[size] += count;
        result.count += count;
    }
    result.polynomial = polynomial_text(result.image_sizes);
    return result;
}

std::vector<std::vector<int>> all_colorings(const Presentation& p, const StructureBundle& b)
{
    validate(p, b);
    Ops ops = build_ops(p, b);
    std::vector<std::vector<int>> out;
    Solver solver(p, ops);
    solver.run_collect(out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace sq
