#include "sq/vassiliev.hpp"

#include <set>

#include "sq/errors.hpp"

namespace sq {

Fingerprint fingerprint(const PassCode& code, const std::vector<Probe>& probes, const SolveOptions& opts)
{
    Presentation p = extract_relations(code);
    Fingerprint f;
    for (const auto& probe : probes)
        f.polynomials.push_back(enhanced_invariant(p, probe.bundle, opts).polynomial);
    return f;
}

void FormalSum::add(const Fingerprint& f, std::int64_t coef)
{
    if (coef == 0)
        return;
    auto [it, fresh] = terms_.emplace(f, coef);
    if (!fresh) {
        it->second += coef;
        if (it->second == 0)
            terms_.erase(it);
    }
}

FormalSum FormalSum::operator-() const
{
    FormalSum out;
    for (const auto& [f, c] : terms_)
        out.terms_.emplace(f, -c);
    return out;
}

FormalSum FormalSum::operator+(const FormalSum& o) const
{
    FormalSum out = *this;
    for (const auto& [f, c] : o.terms_)
        out.add(f, c);
    return out;
}

FormalSum FormalSum::operator-(const FormalSum& o) const { return *this + (-o); }

std::int64_t FormalSum::coefficient(const Fingerprint& f) const
{
    auto it = terms_.find(f);
    return it == terms_.end() ? 0 : it->second;
}

namespace {

int crossing_sign(const ClassicalCode& k, int id)
{
    for (const auto& comp : k.code().components)
        for (const auto& p : comp)
            if (p.kind == CrossingKind::Classical && p.id == id)
                return p.sign;
    throw InvalidCode("classical crossing C" + std::to_string(id) + " not found");
}

void require_knot(const ClassicalCode& k)
{
    if (k.code().components.size() != 1)
        throw InvalidCode("degree-one sums need a one-component knot code");
}

} // namespace

FormalSum s_sum(const ClassicalCode& k, const std::vector<Probe>& probes, const SolveOptions& opts)
{
    require_knot(k);
    FormalSum out;
    auto ids = classical_crossings(k);
    if (ids.empty())
        return out;
    Fingerprint base = fingerprint(disjoint_unknot(flatten(k)), probes, opts);
    for (int d : ids) {
        int s = crossing_sign(k, d);
        out.add(fingerprint(smooth_at(k, d), probes, opts), s);
        out.add(base, -s);
    }
    return out;
}

FormalSum g_sum(const ClassicalCode& k, const std::vector<Probe>& probes, const SolveOptions& opts)
{
    require_knot(k);
    for (const auto& probe : probes)
        if (!probe.bundle.singular)
            throw MissingExtension("probe '" + probe.name + "' has no singular extension");
    FormalSum out;
    auto ids = classical_crossings(k);
    if (ids.empty())
        return out;
    Fingerprint base = fingerprint(glue_kink(k), probes, opts);
    for (int d : ids) {
        int s = crossing_sign(k, d);
        out.add(fingerprint(glue_at(k, d), probes, opts), s);
        out.add(base, -s);
    }
    return out;
}

namespace {

void compare(const std::string& name, const FormalSum& a, const FormalSum& b, bool& differs, std::vector<Witness>& out)
{
    std::set<Fingerprint> keys;
    for (const auto& [f, c] : a.terms())
        keys.insert(f);
    for (const auto& [f, c] : b.terms())
        keys.insert(f);
    for (const auto& f : keys) {
        auto ca = a.coefficient(f);
        auto cb = b.coefficient(f);
        if (ca != cb) {
            differs = true;
            out.push_back({name, f, ca, cb});
        }
    }
}

} // namespace

DistinguishReport distinguish(const ClassicalCode& k1, const ClassicalCode& k2, const std::vector<Probe>& probes,
                              const SolveOptions& opts)
{
    DistinguishReport r;
    compare("S", s_sum(k1, probes, opts), s_sum(k2, probes, opts), r.s_differs, r.witnesses);
    compare("G", g_sum(k1, probes, opts), g_sum(k2, probes, opts), r.g_differs, r.witnesses);
    return r;
}

} // namespace sq
