#include "sq/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

namespace sq {

namespace {

// Partial assignment of 2n^2 cells: tables[0] and tables[1] are the two
// operations being searched, `fixed` are fully known tables the axioms also
// reference. Unassigned cells hold 0.
class Partial {
public:
    explicit Partial(int n) : n(n), cells(static_cast<std::size_t>(2 * n * n), 0) {}

    int get(int table, int x, int y) const
    {
        if (x == 0 || y == 0)
            return 0;
        return cells[static_cast<std::size_t>(table * n * n + (x - 1) * n + (y - 1))];
    }
    int& ref(int table, int x, int y) { return cells[static_cast<std::size_t>(table * n * n + (x - 1) * n + (y - 1))]; }

    int n;
    std::vector<int> cells;
};

// 0 propagates through lookups as "unknown".
struct Lookup {
    const Partial& p;
    int table;
    int operator()(int x, int y) const { return p.get(table, x, y); }
};

struct Fixed {
    const OpTable* t;
    int operator()(int x, int y) const { return (x == 0 || y == 0) ? 0 : t->at(x, y); }
};

bool differ(int a, int b) { return a != 0 && b != 0 && a != b; }

// Axioms (i)-(iii) on a partial up/dn pair; false on a definite violation.
bool semiquandle_consistent(const Partial& p)
{
    const int n = p.n;
    Lookup up{p, 0}, dn{p, 1};
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            int a = dn(x, y), b = up(y, x);
            if (a != 0 && b != 0 && ((a == y) != (b == x)))
                return false;
            if (differ(up(a, b), x))
                return false;
            if (differ(dn(up(x, y), dn(y, x)), x))
                return false;
        }
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            const int xy = up(x, y);
            const int yx = dn(y, x);
            for (int z = 1; z <= n; ++z) {
                const int zy = dn(z, y);
                const int yz = up(y, z);
                if (differ(up(xy, z), up(up(x, zy), yz)))
                    return false;
                if (differ(up(yx, dn(z, xy)), dn(yz, up(x, zy))))
                    return false;
                if (differ(dn(dn(z, xy), yx), dn(zy, x)))
                    return false;
            }
        }
    return true;
}

// Hat axioms on a partial hup/hdn pair over a fixed table.
bool singular_consistent(const Partial& p, const SemiquandleTable& t)
{
    const int n = p.n;
    Lookup hup{p, 0}, hdn{p, 1};
    Fixed up{&t.up}, dn{&t.dn};
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            if (differ(hup(dn(y, x), up(x, y)), up(hdn(y, x), hup(x, y))))
                return false;
            if (differ(hdn(up(x, y), dn(y, x)), dn(hup(x, y), hdn(y, x))))
                return false;
        }
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            const int xy = up(x, y);
            const int yx = dn(y, x);
            for (int z = 1; z <= n; ++z) {
                const int zy = dn(z, y);
                if (differ(hup(xy, z), up(hup(x, zy), up(y, z))))
                    return false;
                if (differ(up(yx, hdn(z, xy)), dn(up(y, z), hup(x, zy))))
                    return false;
                if (differ(dn(hdn(z, xy), yx), hdn(zy, x)))
                    return false;
            }
        }
    return true;
}

// Cell-by-cell backtracking: table 0 column by column, then table 1 column
// by column, values ascending. Results come out in lexicographic order of
// the variable sequence, which is the (table 0 columns, table 1 columns)
// order; callers re-sort into row-major order.
template <typename Consistent>
class CellSearch {
public:
    CellSearch(int n, bool column_permutations, Consistent consistent, std::uint64_t max_nodes,
        std::atomic<std::uint64_t>& nodes) :
        n_(n),
        perms_(column_permutations),
        consistent_(consistent),
        max_nodes_(max_nodes),
        nodes_(nodes),
        partial_(n),
        used_(static_cast<std::size_t>(2 * n * (n + 1) * (n + 1)), false)
    {
        for (int t = 0; t < 2; ++t)
            for (int y = 1; y <= n; ++y)
                for (int x = 1; x <= n; ++x)
                    order_.push_back({t, x, y});
    }

    /// Runs the subtree where the first variable takes `first_value` (0 = all values).
    std::vector<std::vector<int>> run(int first_value)
    {
        results_.clear();
        first_value_ = first_value;
        descend(0);
        return std::move(results_);
    }

private:
    struct Var {
        int table, x, y;
    };

    std::vector<bool>::reference used(int t, int y, int v)
    {
        return used_[static_cast<std::size_t>((t * (n_ + 1) + y) * (n_ + 1) + v)];
    }

    void descend(std::size_t depth)
    {
        std::uint64_t count = ++nodes_;
        if (max_nodes_ != 0 && count > max_nodes_)
            throw BudgetExceeded("enumeration node budget exhausted", count, results_.size());
        if (depth == order_.size()) {
            results_.push_back(partial_.cells);
            return;
        }
        const Var var = order_[depth];
        int lo = 1, hi = n_;
        if (depth == 0 && first_value_ != 0)
            lo = hi = first_value_;
        for (int v = lo; v <= hi; ++v) {
            if (perms_ && used(var.table, var.y, v))
                continue;
            partial_.ref(var.table, var.x, var.y) = v;
            if (perms_)
                used(var.table, var.y, v) = true;
            if (consistent_(partial_))
                descend(depth + 1);
            if (perms_)
                used(var.table, var.y, v) = false;
            partial_.ref(var.table, var.x, var.y) = 0;
        }
    }

    int n_;
    bool perms_;
    Consistent consistent_;
    std::uint64_t max_nodes_;
    std::atomic<std::uint64_t>& nodes_;
    Partial partial_;
    std::vector<bool> used_;
    std::vector<Var> order_;
    std::vector<std::vector<int>> results_;
    int first_value_ = 0;
};

// Splits the search over the first variable's values across workers and
// concatenates results in value order.
template <typename Consistent>
std::vector<std::vector<int>> run_search(int n, bool perms, Consistent consistent, const SearchBudget& budget)
{
    std::atomic<std::uint64_t> nodes{0};
    const int jobs = std::max(1, std::min(budget.jobs, n));
    std::vector<std::vector<std::vector<int>>> parts(static_cast<std::size_t>(n));
    if (jobs == 1) {
        CellSearch<Consistent> search(n, perms, consistent, budget.max_nodes, nodes);
        for (int v = 1; v <= n; ++v)
            parts[static_cast<std::size_t>(v - 1)] = search.run(v);
    }
    else {
        std::atomic<int> next{1};
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&, w] {
                try {
                    CellSearch<Consistent> search(n, perms, consistent, budget.max_nodes, nodes);
                    for (int v = next++; v <= n; v = next++)
                        parts[static_cast<std::size_t>(v - 1)] = search.run(v);
                }
                catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        for (auto& t : workers)
            t.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }
    std::vector<std::vector<int>> out;
    for (auto& part : parts)
        for (auto& r : part)
            out.push_back(std::move(r));
    return out;
}

std::pair<OpTable, OpTable> split_cells(int n, const std::vector<int>& cells)
{
    OpTable a(n), b(n);
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            a.set(x, y, cells[static_cast<std::size_t>((x - 1) * n + (y - 1))]);
            b.set(x, y, cells[static_cast<std::size_t>(n * n + (x - 1) * n + (y - 1))]);
        }
    return {a, b};
}

} // namespace

SemiquandleTable canonical_form(const SemiquandleTable& table)
{
    SemiquandleTable best = table;
    for (const auto& phi : all_permutations(table.order())) {
        auto candidate = relabel(table, phi);
        if (candidate < best)
            best = std::move(candidate);
    }
    return best;
}

std::vector<SemiquandleTable> enumerate_semiquandles(int n, bool up_to_iso, const SearchBudget& budget)
{
    if (n < 1)
        throw StructureError("order must be at least 1");
    if (n > 6)
        throw StructureError("orders above 6 are not supported");
    auto raw = run_search(n, true, semiquandle_consistent, budget);
    std::vector<SemiquandleTable> out;
    out.reserve(raw.size());
    for (const auto& cells : raw) {
        auto [up, dn] = split_cells(n, cells);
        out.push_back({std::move(up), std::move(dn)});
    }
    if (up_to_iso) {
        std::set<SemiquandleTable> forms;
        for (const auto& t : out)
            forms.insert(canonical_form(t));
        out.assign(forms.begin(), forms.end());
    }
    else
        std::sort(out.begin(), out.end());
    return out;
}

std::vector<SingularExtension> enumerate_singular_extensions(
    const SemiquandleTable& table, bool up_to_iso, const SearchBudget& budget)
{
    if (! check_semiquandle(table).ok())
        throw StructureError("base table is not a semiquandle");
    const int n = table.order();
    auto consistent = [&table](const Partial& p) { return singular_consistent(p, table); };
    auto raw = run_search(n, false, consistent, budget);
    std::vector<SingularExtension> out;
    for (const auto& cells : raw) {
        auto [hup, hdn] = split_cells(n, cells);
        out.push_back({std::move(hup), std::move(hdn)});
    }
    if (up_to_iso) {
        StructureBundle base{table, std::nullopt, std::nullopt};
        auto aut = automorphisms(base);
        std::set<SingularExtension> reps;
        for (const auto& ext : out) {
            SingularExtension best = ext;
            for (const auto& phi : aut) {
                auto candidate = relabel(ext, phi);
                if (candidate < best)
                    best = std::move(candidate);
            }
            reps.insert(std::move(best));
        }
        out.assign(reps.begin(), reps.end());
    }
    else
        std::sort(out.begin(), out.end());
    return out;
}

std::vector<Permutation> enumerate_virtual_structures(const StructureBundle& bundle, bool up_to_conjugacy)
{
    StructureBundle base{bundle.table, bundle.singular, std::nullopt};
    auto aut = automorphisms(base);
    if (! up_to_conjugacy)
        return aut;
    std::set<Permutation> reps;
    std::set<Permutation> seen;
    for (const auto& v : aut) {
        if (seen.count(v))
            continue;
        Permutation least = v;
        for (const auto& phi : aut) {
            Permutation conj = phi.inverse() * v * phi;
            seen.insert(conj);
            least = std::min(least, conj);
        }
        reps.insert(least);
    }
    return {reps.begin(), reps.end()};
}

} // namespace sq
