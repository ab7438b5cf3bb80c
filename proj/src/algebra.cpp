#include "sq/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sq {

OpTable::OpTable(int n) : n_(n), cells_(static_cast<std::size_t>(n * n), 1) {}

OpTable::OpTable(const RawTable& rows) : n_(static_cast<int>(rows.size()))
{
    cells_.reserve(static_cast<std::size_t>(n_ * n_));
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n_)
            throw StructureError("table is not square");
        for (int v : row) {
            if (v < 1 || v > n_)
                throw StructureError("table entry " + std::to_string(v) + " out of range 1.." + std::to_string(n_));
            cells_.push_back(v);
        }
    }
}

RawTable OpTable::rows() const
{
    RawTable out(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_)));
    for (int x = 1; x <= n_; ++x)
        for (int y = 1; y <= n_; ++y)
            out[static_cast<std::size_t>(x - 1)][static_cast<std::size_t>(y - 1)] = at(x, y);
    return out;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images))
{
    std::vector<bool> seen(images_.size() + 1, false);
    for (int v : images_) {
        if (v < 1 || v > size() || seen[static_cast<std::size_t>(v)])
            throw StructureError("not a permutation of 1.." + std::to_string(size()));
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int n)
{
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 1);
    return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(const std::string& text, int n)
{
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 1);
    if (text == "id" || text == "()" || text.empty())
        return Permutation(std::move(images));

    std::vector<int> cycle;
    bool open = false;
    auto close_cycle = [&] {
        for (std::size_t i = 0; i < cycle.size(); ++i)
            images[static_cast<std::size_t>(cycle[i] - 1)] = cycle[(i + 1) % cycle.size()];
        cycle.clear();
    };
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '(') {
            if (open)
                throw StructureError("nested cycle in '" + text + "'");
            open = true;
            ++i;
        }
        else if (c == ')') {
            if (! open)
                throw StructureError("unbalanced ')' in '" + text + "'");
            open = false;
            close_cycle();
            ++i;
        }
        else if (c == ' ' || c == ',') {
            ++i;
        }
        else if (c >= '0' && c <= '9') {
            if (! open)
                throw StructureError("element outside a cycle in '" + text + "'");
            // Single digits unless the cycle separates its elements.
            std::size_t close = text.find(')', i);
            bool separated = text.substr(i, close - i).find_first_of(" ,") != std::string::npos;
            std::size_t j = i + 1;
            if (separated)
                while (j < text.size() && text[j] >= '0' && text[j] <= '9')
                    ++j;
            int v = std::stoi(text.substr(i, j - i));
            if (v < 1 || v > n)
                throw StructureError("cycle element " + std::to_string(v) + " out of range");
            if (std::find(cycle.begin(), cycle.end(), v) != cycle.end())
                throw StructureError("repeated element in cycle '" + text + "'");
            cycle.push_back(v);
            i = j;
        }
        else
            throw StructureError("unexpected character in cycle notation '" + text + "'");
    }
    if (open)
        throw StructureError("unterminated cycle in '" + text + "'");
    return Permutation(std::move(images));
}

Permutation Permutation::inverse() const
{
    std::vector<int> inv(images_.size());
    for (int i = 1; i <= size(); ++i)
        inv[static_cast<std::size_t>((*this)(i) - 1)] = i;
    return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b)
{
    std::vector<int> out(b.images_.size());
    for (int i = 1; i <= b.size(); ++i)
        out[static_cast<std::size_t>(i - 1)] = a(b(i));
    return Permutation(std::move(out));
}

bool Permutation::is_identity() const
{
    for (int i = 1; i <= size(); ++i)
        if ((*this)(i) != i)
            return false;
    return true;
}

std::string Permutation::to_cycles() const
{
    std::string out;
    std::vector<bool> seen(images_.size() + 1, false);
    bool wide = size() > 9;
    for (int i = 1; i <= size(); ++i) {
        if (seen[static_cast<std::size_t>(i)] || (*this)(i) == i)
            continue;
        out += '(';
        int j = i;
        bool first = true;
        while (! seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            if (wide && ! first)
                out += ' ';
            out += std::to_string(j);
            first = false;
            j = (*this)(j);
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

std::string axiom_name(Axiom a)
{
    switch (a) {
    case Axiom::ColumnUp: return "0-up";
    case Axiom::ColumnDn: return "0-dn";
    case Axiom::I: return "i";
    case Axiom::II1: return "ii.1";
    case Axiom::II2: return "ii.2";
    case Axiom::III1: return "iii.1";
    case Axiom::III2: return "iii.2";
    case Axiom::III3: return "iii.3";
    case Axiom::HI1: return "hi.1";
    case Axiom::HI2: return "hi.2";
    case Axiom::HII1: return "hii.1";
    case Axiom::HII2: return "hii.2";
    case Axiom::HII3: return "hii.3";
    case Axiom::VirtualUp: return "v-up";
    case Axiom::VirtualDn: return "v-dn";
    case Axiom::VirtualHup: return "v-hup";
    case Axiom::VirtualHdn: return "v-hdn";
    }
    return "?";
}

std::string AxiomReport::to_text() const
{
    std::ostringstream out;
    for (const auto& s : structural)
        out << "structural: " << s << '\n';
    for (const auto& v : violations) {
        out << "axiom " << axiom_name(v.axiom) << " violated at";
        for (int w : v.witness)
            out << ' ' << w;
        out << '\n';
    }
    if (ok())
        out << "valid\n";
    return out.str();
}

namespace {

void check_columns(const OpTable& t, Axiom axiom, std::vector<Violation>& out)
{
    const int n = t.order();
    for (int y = 1; y <= n; ++y) {
        std::vector<bool> seen(static_cast<std::size_t>(n + 1), false);
        for (int x = 1; x <= n; ++x) {
            int v = t.at(x, y);
            if (seen[static_cast<std::size_t>(v)]) {
                out.push_back({axiom, {x, y}});
                break;
            }
            seen[static_cast<std::size_t>(v)] = true;
        }
    }
}

std::optional<OpTable> to_table(const RawTable& raw, const char* what, std::vector<std::string>& structural)
{
    try {
        return OpTable(raw);
    }
    catch (const StructureError& e) {
        structural.push_back(std::string(what) + ": " + e.what());
        return std::nullopt;
    }
}

void sort_report(AxiomReport& r)
{
    std::sort(r.violations.begin(), r.violations.end());
}

void check_semiquandle_axioms(const OpTable& up, const OpTable& dn, AxiomReport& report)
{
    const int n = up.order();
    auto& out = report.violations;
    check_columns(up, Axiom::ColumnUp, out);
    check_columns(dn, Axiom::ColumnDn, out);

    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            if ((dn.at(x, y) == y) != (up.at(y, x) == x))
                out.push_back({Axiom::I, {x, y}});
            if (up.at(dn.at(x, y), up.at(y, x)) != x)
                out.push_back({Axiom::II1, {x, y}});
            if (dn.at(up.at(x, y), dn.at(y, x)) != x)
                out.push_back({Axiom::II2, {x, y}});
        }

    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y)
            for (int z = 1; z <= n; ++z) {
                const int xy = up.at(x, y);
                const int zy = dn.at(z, y);
                const int yz = up.at(y, z);
                if (up.at(xy, z) != up.at(up.at(x, zy), yz))
                    out.push_back({Axiom::III1, {x, y, z}});
                if (up.at(dn.at(y, x), dn.at(z, xy)) != dn.at(yz, up.at(x, zy)))
                    out.push_back({Axiom::III2, {x, y, z}});
                if (dn.at(dn.at(z, xy), dn.at(y, x)) != dn.at(zy, x))
                    out.push_back({Axiom::III3, {x, y, z}});
            }
}

bool same_order(const StructureBundle& b, const OpTable& t) { return t.order() == b.order(); }

} // namespace

AxiomReport check_semiquandle(const RawTable& up, const RawTable& dn)
{
    AxiomReport report;
    auto u = to_table(up, "up", report.structural);
    auto d = to_table(dn, "dn", report.structural);
    if (u && d && u->order() != d->order())
        report.structural.push_back("up and dn have different orders");
    if (u && u->order() == 0)
        report.structural.push_back("empty table");
    if (! report.structural.empty())
        return report;
    check_semiquandle_axioms(*u, *d, report);
    sort_report(report);
    return report;
}

AxiomReport check_semiquandle(const SemiquandleTable& table)
{
    AxiomReport report;
    if (table.up.order() != table.dn.order() || table.up.order() == 0) {
        report.structural.push_back("up and dn have different or zero orders");
        return report;
    }
    check_semiquandle_axioms(table.up, table.dn, report);
    sort_report(report);
    return report;
}

AxiomReport check_singular(const StructureBundle& bundle)
{
    AxiomReport report;
    if (! bundle.singular) {
        report.structural.push_back("bundle has no singular extension");
        return report;
    }
    const auto& up = bundle.table.up;
    const auto& dn = bundle.table.dn;
    const auto& hup = bundle.singular->hup;
    const auto& hdn = bundle.singular->hdn;
    if (! same_order(bundle, hup) || ! same_order(bundle, hdn)) {
        report.structural.push_back("singular tables do not match the table order");
        return report;
    }
    const int n = bundle.order();
    auto& out = report.violations;
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            if (hup.at(dn.at(y, x), up.at(x, y)) != up.at(hdn.at(y, x), hup.at(x, y)))
                out.push_back({Axiom::HI1, {x, y}});
            if (hdn.at(up.at(x, y), dn.at(y, x)) != dn.at(hup.at(x, y), hdn.at(y, x)))
                out.push_back({Axiom::HI2, {x, y}});
        }
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y)
            for (int z = 1; z <= n; ++z) {
                const int xy = up.at(x, y);
                const int zy = dn.at(z, y);
                const int yx = dn.at(y, x);
                if (hup.at(xy, z) != up.at(hup.at(x, zy), up.at(y, z)))
                    out.push_back({Axiom::HII1, {x, y, z}});
                if (up.at(yx, hdn.at(z, xy)) != dn.at(up.at(y, z), hup.at(x, zy)))
                    out.push_back({Axiom::HII2, {x, y, z}});
                if (dn.at(hdn.at(z, xy), yx) != hdn.at(zy, x))
                    out.push_back({Axiom::HII3, {x, y, z}});
            }
    sort_report(report);
    return report;
}

AxiomReport check_virtual(const StructureBundle& bundle)
{
    AxiomReport report;
    if (! bundle.virt) {
        report.structural.push_back("bundle has no virtual extension");
        return report;
    }
    const auto& v = bundle.virt->v;
    if (v.size() != bundle.order()) {
        report.structural.push_back("v is not a permutation of 1.." + std::to_string(bundle.order()));
        return report;
    }
    const int n = bundle.order();
    auto check = [&](const OpTable& t, Axiom axiom) {
        for (int x = 1; x <= n; ++x)
            for (int y = 1; y <= n; ++y)
                if (v(t.at(x, y)) != t.at(v(x), v(y)))
                    report.violations.push_back({axiom, {x, y}});
    };
    check(bundle.table.up, Axiom::VirtualUp);
    check(bundle.table.dn, Axiom::VirtualDn);
    if (bundle.singular) {
        check(bundle.singular->hup, Axiom::VirtualHup);
        check(bundle.singular->hdn, Axiom::VirtualHdn);
    }
    sort_report(report);
    return report;
}

AxiomReport check_bundle(const StructureBundle& bundle)
{
    AxiomReport report = check_semiquandle(bundle.table);
    if (! report.ok())
        return report;
    auto merge = [&](AxiomReport r) {
        report.structural.insert(report.structural.end(), r.structural.begin(), r.structural.end());
        report.violations.insert(report.violations.end(), r.violations.begin(), r.violations.end());
    };
    if (bundle.singular)
        merge(check_singular(bundle));
    if (bundle.virt)
        merge(check_virtual(bundle));
    sort_report(report);
    return report;
}

namespace {

Element column_inverse(const OpTable& t, Element value, Element y)
{
    for (int x = 1; x <= t.order(); ++x)
        if (t.at(x, y) == value)
            return x;
    throw StructureError("column " + std::to_string(y) + " is not invertible");
}

} // namespace

Element eval(const StructureBundle& bundle, OpKind op, Element x, Element y)
{
    const int n = bundle.order();
    auto in_range = [n](Element e) { return e >= 1 && e <= n; };
    bool unary = op == OpKind::V || op == OpKind::VInv;
    if (! in_range(x) || (! unary && ! in_range(y)))
        throw StructureError("operand out of range 1.." + std::to_string(n));

    switch (op) {
    case OpKind::Up: return bundle.table.up.at(x, y);
    case OpKind::Dn: return bundle.table.dn.at(x, y);
    case OpKind::UpInv: return column_inverse(bundle.table.up, x, y);
    case OpKind::DnInv: return column_inverse(bundle.table.dn, x, y);
    case OpKind::HUp:
    case OpKind::HDn:
        if (! bundle.singular)
            throw MissingExtension("hat operations need a singular extension");
        return op == OpKind::HUp ? bundle.singular->hup.at(x, y) : bundle.singular->hdn.at(x, y);
    case OpKind::V:
    case OpKind::VInv:
        if (! bundle.virt)
            throw MissingExtension("v needs a virtual extension");
        return op == OpKind::V ? bundle.virt->v(x) : bundle.virt->v.inverse()(x);
    }
    throw StructureError("unknown operation");
}

ElementSet to_mask(const std::set<Element>& elements)
{
    ElementSet m = 0;
    for (Element e : elements)
        m |= ElementSet{1} << (e - 1);
    return m;
}

std::set<Element> from_mask(ElementSet mask)
{
    std::set<Element> out;
    for (int i = 0; i < 32; ++i)
        if (mask & (ElementSet{1} << i))
            out.insert(i + 1);
    return out;
}

ElementSet subclosure(const StructureBundle& bundle, ElementSet seed)
{
    const int n = bundle.order();
    std::vector<const OpTable*> binary{&bundle.table.up, &bundle.table.dn};
    if (bundle.singular) {
        binary.push_back(&bundle.singular->hup);
        binary.push_back(&bundle.singular->hdn);
    }
    ElementSet current = seed;
    while (true) {
        ElementSet next = current;
        for (int x = 1; x <= n; ++x) {
            if (! (current & (ElementSet{1} << (x - 1))))
                continue;
            if (bundle.virt)
                next |= ElementSet{1} << (bundle.virt->v(x) - 1);
            for (int y = 1; y <= n; ++y) {
                if (! (current & (ElementSet{1} << (y - 1))))
                    continue;
                for (const OpTable* t : binary)
                    next |= ElementSet{1} << (t->at(x, y) - 1);
            }
        }
        if (next == current)
            return current;
        current = next;
    }
}

std::set<Element> subclosure(const StructureBundle& bundle, const std::set<Element>& seed)
{
    return from_mask(subclosure(bundle, to_mask(seed)));
}

std::vector<Permutation> all_permutations(int n)
{
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    std::vector<Permutation> out;
    do
        out.emplace_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

namespace {

bool preserves(const OpTable& t, const Permutation& phi)
{
    const int n = t.order();
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y)
            if (phi(t.at(x, y)) != t.at(phi(x), phi(y)))
                return false;
    return true;
}

} // namespace

std::vector<Permutation> automorphisms(const StructureBundle& bundle)
{
    std::vector<Permutation> out;
    for (auto& phi : all_permutations(bundle.order())) {
        if (! preserves(bundle.table.up, phi) || ! preserves(bundle.table.dn, phi))
            continue;
        if (bundle.singular && (! preserves(bundle.singular->hup, phi) || ! preserves(bundle.singular->hdn, phi)))
            continue;
        if (bundle.virt && phi * bundle.virt->v != bundle.virt->v * phi)
            continue;
        out.push_back(std::move(phi));
    }
    return out;
}

SemiquandleTable make_constant_action(int n, const Permutation& sigma)
{
    if (sigma.size() != n)
        throw StructureError("sigma is not a permutation of 1.." + std::to_string(n));
    Permutation inv = sigma.inverse();
    SemiquandleTable t{OpTable(n), OpTable(n)};
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            t.up.set(x, y, sigma(x));
            t.dn.set(x, y, inv(x));
        }
    return t;
}

SemiquandleTable make_trivial(int n) { return make_constant_action(n, Permutation::identity(n)); }

SingularExtension make_operator_singular(const SemiquandleTable& table)
{
    const int n = table.order();
    SingularExtension s{OpTable(n), OpTable(n)};
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            s.hup.set(x, y, y);
            s.hdn.set(x, y, y);
        }
    return s;
}

SingularExtension make_flat_singular(const SemiquandleTable& table) { return {table.up, table.dn}; }

SingularExtension make_trivial_singular(int n)
{
    SingularExtension s{OpTable(n), OpTable(n)};
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            s.hup.set(x, y, x);
            s.hdn.set(x, y, x);
        }
    return s;
}

namespace {

OpTable relabel_table(const OpTable& t, const Permutation& phi)
{
    OpTable out(t.order());
    for (int x = 1; x <= t.order(); ++x)
        for (int y = 1; y <= t.order(); ++y)
            out.set(phi(x), phi(y), phi(t.at(x, y)));
    return out;
}

} // namespace

SemiquandleTable relabel(const SemiquandleTable& table, const Permutation& phi)
{
    return {relabel_table(table.up, phi), relabel_table(table.dn, phi)};
}

SingularExtension relabel(const SingularExtension& ext, const Permutation& phi)
{
    return {relabel_table(ext.hup, phi), relabel_table(ext.hdn, phi)};
}

} // namespace sq
