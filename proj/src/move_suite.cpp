#include "sq/move_suite.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "sq/named.hpp"

namespace sq {

std::vector<Probe> reference_bundles()
{
    return {{"M_T", {named::order4_semiquandle(), std::nullopt, std::nullopt}},
            {"X132_operator", named::constant_action_132_operator()},
            {"M_TS_v13", named::order3_virtual()},
            {"T_singular", named::order4_singular()}};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index)
{
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<MoveId> suite_catalog(bool include_derived)
{
    std::vector<MoveId> ids{MoveId::FR1,   MoveId::FR2, MoveId::FR3, MoveId::VR1,  MoveId::VR2,
                            MoveId::VR3,   MoveId::Mixed, MoveId::SR2, MoveId::SR3, MoveId::VSR3};
    if (include_derived) {
        ids.push_back(MoveId::SR3Derived);
        ids.push_back(MoveId::SR2Reverse);
    }
    return ids;
}

namespace {

struct TrialResult {
    std::string move;
    int comparisons = 0;
    bool inverse_ok = true;
    std::vector<SuiteFailure> failures;
};

TrialResult run_trial(const SuiteOptions& opts, const std::vector<MoveId>& catalog, const std::vector<Probe>& bundles,
                      int t)
{
    TrialResult r;
    MoveId target = catalog[static_cast<std::size_t>(t) % catalog.size()];
    std::uint64_t s = mix_seed(opts.seed, static_cast<std::uint64_t>(t));
    std::mt19937_64 rng(s);
    PassCode code;
    std::vector<MoveSpec> sites;
    for (int attempt = 0; attempt < 2000 && sites.empty(); ++attempt) {
        code = random_code(opts.budget, rng());
        for (auto& m : applicable_moves(code, MoveCatalog::Flat, opts.include_derived))
            if (m.id == target)
                sites.push_back(std::move(m));
    }
    if (sites.empty()) {
        r.move = "none";
        return r;
    }
    const MoveSpec& m = sites[static_cast<std::size_t>(rng() % sites.size())];
    r.move = move_name(m.id);
    auto moved = apply_move(code, m);
    auto back = apply_move(moved.code, moved.inverse);
    r.inverse_ok = normalize(back.code) == normalize(code);
    Presentation before = extract_relations(code);
    Presentation after = extract_relations(moved.code);
    for (const auto& b : bundles) {
        if ((before.uses_hat() || after.uses_hat()) && !b.bundle.singular)
            continue;
        ++r.comparisons;
        auto x = enhanced_invariant(before, b.bundle);
        auto y = enhanced_invariant(after, b.bundle);
        if (!(x == y))
            r.failures.push_back({t, r.move, b.name, format_code(code), format_code(moved.code)});
    }
    return r;
}

} // namespace

SuiteReport run_move_suite(const SuiteOptions& opts)
{
    auto catalog = suite_catalog(opts.include_derived);
    auto bundles = reference_bundles();
    std::vector<TrialResult> results(static_cast<std::size_t>(std::max(0, opts.trials)));
    int jobs = std::max(1, opts.jobs);
    auto work = [&](int worker) {
        for (int t = worker; t < opts.trials; t += jobs)
            results[static_cast<std::size_t>(t)] = run_trial(opts, catalog, bundles, t);
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back(work, w);
        for (auto& th : pool)
            th.join();
    }
    SuiteReport rep;
    rep.seed = opts.seed;
    rep.trials = opts.trials;
    for (auto& r : results) {
        rep.moves[r.move]++;
        rep.comparisons += r.comparisons;
        if (!r.inverse_ok)
            ++rep.inverse_failures;
        rep.failures.insert(rep.failures.end(), r.failures.begin(), r.failures.end());
    }
    return rep;
}

std::optional<ForbiddenWitness> find_forbidden_witness(std::uint64_t seed, int attempts)
{
    auto bundles = reference_bundles();
    CodeBudget budget{6, 0, 4, 2};
    for (int a = 0; a < attempts; ++a) {
        PassCode code = random_code(budget, mix_seed(seed, static_cast<std::uint64_t>(a)));
        for (const auto& site : forbidden_sites(code)) {
            PassCode moved = apply_forbidden(code, site);
            Presentation p = extract_relations(code);
            Presentation q = extract_relations(moved);
            for (const auto& b : bundles) {
                auto x = enhanced_invariant(p, b.bundle);
                auto y = enhanced_invariant(q, b.bundle);
                if (!(x == y))
                    return ForbiddenWitness{code, moved, b.name, x.polynomial, y.polynomial};
            }
        }
    }
    return std::nullopt;
}

} // namespace sq
