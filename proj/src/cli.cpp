#include "sq/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "sq/enumerate.hpp"
#include "sq/move_suite.hpp"
#include "sq/named.hpp"
#include "sq/table_io.hpp"
#include "sq/vassiliev.hpp"

namespace sq {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A flag value naming a file is read from disk; anything else is taken as
// inline text.
std::string file_or_inline(const std::string& value)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(value, ec)) {
        std::ifstream in(value);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return value;
}

StructureBundle named_table(const std::string& name)
{
    if (name == "mt")
        return {named::order4_semiquandle(), std::nullopt, std::nullopt};
    if (name == "x132")
        return {named::constant_action_132(), std::nullopt, std::nullopt};
    if (name == "x132_operator")
        return named::constant_action_132_operator();
    if (name == "mts_v13")
        return named::order3_virtual();
    if (name == "t_singular")
        return named::order4_singular();
    throw UsageError("unknown table '" + name + "'");
}

StructureBundle load_table(const std::string& value)
{
    std::error_code ec;
    if (!std::filesystem::is_regular_file(value, ec) && value.find('\n') == std::string::npos
        && value.rfind("semiquandle", 0) != 0)
        return named_table(value);
    return parse_bundle(file_or_inline(value));
}

bool is_code_builtin(const std::string& name)
{
    auto names = builtin_code_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

struct Source {
    std::string presentation;
    std::string code;
    std::string builtin;
};

Presentation load_presentation(const Source& s)
{
    int given = !s.presentation.empty() + !s.code.empty() + !s.builtin.empty();
    if (given != 1)
        throw UsageError("give exactly one of --presentation, --code, --builtin");
    if (!s.presentation.empty())
        return parse_presentation(file_or_inline(s.presentation));
    if (!s.code.empty())
        return extract_relations(parse_code(file_or_inline(s.code)));
    auto names = builtin_presentation_names();
    bool pres = std::find(names.begin(), names.end(), s.builtin) != names.end() || s.builtin.rfind("unlink", 0) == 0;
    if (!pres && is_code_builtin(s.builtin))
        return extract_relations(builtin_code(s.builtin));
    return builtin_presentation(s.builtin);
}

json report_json(const AxiomReport& r)
{
    json j;
    j["valid"] = r.ok();
    j["structural"] = r.structural;
    json v = json::array();
    for (const auto& x : r.violations)
        v.push_back({{"axiom", axiom_name(x.axiom)}, {"witness", x.witness}});
    j["violations"] = v;
    return j;
}

json invariant_json(const InvariantResult& r)
{
    json sizes = json::object();
    for (const auto& [k, v] : r.image_sizes)
        sizes[std::to_string(k)] = v;
    return {{"count", r.count}, {"image_sizes", sizes}, {"polynomial", r.polynomial}};
}

std::string fingerprint_text(const Fingerprint& f)
{
    std::string s = "(";
    for (std::size_t i = 0; i < f.polynomials.size(); ++i)
        s += (i ? ", " : "") + f.polynomials[i];
    return s + ")";
}

json formal_sum_json(const FormalSum& f)
{
    json a = json::array();
    for (const auto& [fp, c] : f.terms())
        a.push_back({{"term", fp.polynomials}, {"coefficient", c}});
    return a;
}

void require_valid(const StructureBundle& b, std::ostream& err)
{
    auto r = check_bundle(b);
    if (!r.ok()) {
        err << r.to_text();
        throw std::invalid_argument("table fails the axioms");
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Semiquandle invariants of flat, singular and virtual links", "sqtool"};
    app.require_subcommand(1);

    std::string table, presentation, code, builtin, kind = "semiquandle", k1, k2, expect;
    std::vector<std::string> probes;
    int n = 0, trials = 500, jobs = 1;
    std::uint64_t seed = 1, max_nodes = SearchBudget{}.max_nodes;
    bool iso = false, as_json = false;

    auto* verify = app.add_subcommand("verify", "check the axioms of a table");
    verify->add_option("--table", table, "table file, inline table or named table")->required();
    verify->add_flag("--json", as_json);

    auto* enumerate = app.add_subcommand("enumerate", "list structures");
    enumerate->add_option("--kind", kind, "semiquandle, singular or virtual")
        ->check(CLI::IsMember({"semiquandle", "singular", "virtual"}));
    enumerate->add_option("--n", n, "order for --kind semiquandle")->check(CLI::Range(1, 6));
    enumerate->add_option("--table", table, "base table for singular/virtual");
    enumerate->add_flag("--iso", iso, "one per isomorphism or conjugacy class");
    enumerate->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    enumerate->add_option("--max-nodes", max_nodes, "search budget, 0 = unlimited");

    auto add_source = [&](CLI::App* sub) {
        sub->add_option("--table", table)->required();
        sub->add_option("--presentation", presentation, "presentation file or inline text");
        sub->add_option("--code", code, "pass code file or inline text");
        sub->add_option("--builtin", builtin, "named presentation or code");
        sub->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    };
    auto* count = app.add_subcommand("count", "count colorings (JSON)");
    add_source(count);
    auto* poly = app.add_subcommand("poly", "enhanced polynomial");
    add_source(poly);
    poly->add_flag("--json", as_json);

    auto* autos = app.add_subcommand("auto", "automorphisms and their conjugacy classes");
    autos->add_option("--table", table)->required();
    autos->add_flag("--json", as_json);

    auto* moves = app.add_subcommand("moves-test", "randomized move-invariance suite");
    moves->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
    moves->add_option("--seed", seed);
    moves->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    moves->add_flag("--json", as_json);

    auto* vass = app.add_subcommand("vassiliev", "compare the degree-one sums of two knots (JSON)");
    vass->add_option("--k1", k1, "classical code file or inline text")->required();
    vass->add_option("--k2", k2, "classical code file or inline text")->required();
    vass->add_option("--probes", probes, "table files or named tables");
    vass->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    vass->add_option("--expect", expect, "exit 1 unless the verdict matches")
        ->check(CLI::IsMember({"distinct", "inconclusive"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return ExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return ExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return ExitUsage;
    }

    try {
        if (*verify) {
            auto b = load_table(table);
            auto r = check_bundle(b);
            if (as_json)
                out << report_json(r).dump(2) << "\n";
            else
                out << r.to_text();
            return r.ok() ? ExitOk : ExitInvalid;
        }
        if (*enumerate) {
            SearchBudget budget{max_nodes, jobs};
            std::vector<StructureBundle> found;
            if (kind == "semiquandle") {
                if (n == 0)
                    throw UsageError("enumerate --kind semiquandle needs --n");
                for (auto& t : enumerate_semiquandles(n, iso, budget))
                    found.push_back({t, std::nullopt, std::nullopt});
            } else {
                if (table.empty())
                    throw UsageError("enumerate --kind " + kind + " needs --table");
                auto base = load_table(table);
                require_valid(base, err);
                if (kind == "singular") {
                    for (auto& e : enumerate_singular_extensions(base.table, iso, budget))
                        found.push_back({base.table, e, std::nullopt});
                } else {
                    for (auto& v : enumerate_virtual_structures(base, iso))
                        found.push_back({base.table, base.singular, VirtualExtension{v}});
                }
            }
            for (std::size_t i = 0; i < found.size(); ++i) {
                if (i)
                    out << "%\n";
                out << format_bundle(found[i]);
            }
            out << "count: " << found.size() << "\n";
            return ExitOk;
        }
        if (*count || *poly) {
            auto b = load_table(table);
            require_valid(b, err);
            auto p = load_presentation({presentation, code, builtin});
            auto r = enhanced_invariant(p, b, SolveOptions{jobs});
            if (*count || as_json)
                out << invariant_json(r).dump(2) << "\n";
            else
                out << r.polynomial << "\n";
            return ExitOk;
        }
        if (*autos) {
            auto b = load_table(table);
            require_valid(b, err);
            auto all = automorphisms(b);
            auto reps = enumerate_virtual_structures(b, true);
            if (as_json) {
                json a = json::array(), c = json::array();
                for (const auto& p : all)
                    a.push_back(p.to_cycles());
                for (const auto& p : reps)
                    c.push_back(p.to_cycles());
                out << json{{"automorphisms", a}, {"conjugacy_classes", c}}.dump(2) << "\n";
            } else {
                out << "automorphisms: " << all.size() << "\n";
                for (const auto& p : all)
                    out << "  " << p.to_cycles() << "\n";
                out << "conjugacy classes: " << reps.size() << "\n";
                for (const auto& p : reps)
                    out << "  " << p.to_cycles() << "\n";
            }
            return ExitOk;
        }
        if (*moves) {
            SuiteOptions opts;
            opts.trials = trials;
            opts.seed = seed;
            opts.jobs = jobs;
            auto rep = run_move_suite(opts);
            if (as_json) {
                json f = json::array();
                for (const auto& x : rep.failures)
                    f.push_back({{"trial", x.trial}, {"move", x.move}, {"bundle", x.bundle}, {"before", x.before},
                                 {"after", x.after}});
                out << json{{"seed", rep.seed},
                            {"trials", rep.trials},
                            {"comparisons", rep.comparisons},
                            {"moves", rep.moves},
                            {"inverse_failures", rep.inverse_failures},
                            {"failures", f},
                            {"ok", rep.ok()}}
                           .dump(2)
                    << "\n";
            } else {
                out << "seed: " << rep.seed << "\n";
                out << "trials: " << rep.trials << "\n";
                out << "comparisons: " << rep.comparisons << "\n";
                for (const auto& [m, c] : rep.moves)
                    out << "  " << m << ": " << c << "\n";
                out << "inverse failures: " << rep.inverse_failures << "\n";
                out << "invariant changes: " << rep.failures.size() << "\n";
                for (const auto& x : rep.failures)
                    out << "  trial " << x.trial << " " << x.move << " under " << x.bundle << "\n";
            }
            return rep.ok() ? ExitOk : ExitInvalid;
        }
        if (*vass) {
            std::vector<Probe> ps;
            for (const auto& p : probes) {
                auto b = load_table(p);
                require_valid(b, err);
                ps.push_back({p, b});
            }
            auto c1 = parse_classical(file_or_inline(k1));
            auto c2 = parse_classical(file_or_inline(k2));
            SolveOptions so{jobs};
            auto s1 = s_sum(c1, ps, so), s2 = s_sum(c2, ps, so);
            auto g1 = g_sum(c1, ps, so), g2 = g_sum(c2, ps, so);
            auto rep = distinguish(c1, c2, ps, so);
            json w = json::array();
            for (const auto& x : rep.witnesses)
                w.push_back({{"invariant", x.invariant},
                             {"term", x.term.polynomials},
                             {"k1", x.coef1},
                             {"k2", x.coef2},
                             {"text", x.invariant + " coefficient of " + fingerprint_text(x.term) + ": "
                                          + std::to_string(x.coef1) + " vs " + std::to_string(x.coef2)}});
            json names = json::array();
            for (const auto& p : ps)
                names.push_back(p.name);
            out << json{{"probes", names},
                        {"S_k1", formal_sum_json(s1)},
                        {"S_k2", formal_sum_json(s2)},
                        {"G_k1", formal_sum_json(g1)},
                        {"G_k2", formal_sum_json(g2)},
                        {"s_differs", rep.s_differs},
                        {"g_differs", rep.g_differs},
                        {"verdict", rep.conclusive() ? "distinct" : "inconclusive"},
                        {"witnesses", w}}
                       .dump(2)
                << "\n";
            std::string verdict = rep.conclusive() ? "distinct" : "inconclusive";
            return expect.empty() || expect == verdict ? ExitOk : ExitInvalid;
        }
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return ExitBudget;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return ExitInvalid;
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << "\n";
        return ExitUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return ExitUsage;
    } catch (const InvalidCode& e) {
        err << "invalid code: " << e.what() << "\n";
        return ExitUsage;
    } catch (const MissingExtension& e) {
        err << "missing extension: " << e.what() << "\n";
        return ExitUsage;
    } catch (const StructureError& e) {
        err << "bad table: " << e.what() << "\n";
        return ExitUsage;
    }
    return ExitUsage;
}

} // namespace sq
