#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sq/cli.hpp"
#include "sq/enumerate.hpp"
#include "sq/move_suite.hpp"
#include "sq/named.hpp"
#include "sq/table_io.hpp"

namespace py = pybind11;
using namespace sq;

namespace {

StructureBundle bundle_from(const std::string& text)
{
    if (text == "mt")
        return {named::order4_semiquandle(), std::nullopt, std::nullopt};
    if (text == "x132")
        return {named::constant_action_132(), std::nullopt, std::nullopt};
    if (text == "x132_operator")
        return named::constant_action_132_operator();
    if (text == "mts_v13")
        return named::order3_virtual();
    if (text == "t_singular")
        return named::order4_singular();
    return parse_bundle(text);
}

Presentation presentation_from(const std::optional<std::string>& presentation, const std::optional<std::string>& code,
                               const std::optional<std::string>& builtin)
{
    int given = presentation.has_value() + code.has_value() + builtin.has_value();
    if (given != 1)
        throw py::value_error("give exactly one of presentation, code, builtin");
    if (presentation)
        return parse_presentation(*presentation);
    if (code)
        return extract_relations(parse_code(*code));
    auto names = builtin_code_names();
    auto pres = builtin_presentation_names();
    bool is_pres = std::find(pres.begin(), pres.end(), *builtin) != pres.end() || builtin->rfind("unlink", 0) == 0;
    if (!is_pres && std::find(names.begin(), names.end(), *builtin) != names.end())
        return extract_relations(builtin_code(*builtin));
    return builtin_presentation(*builtin);
}

py::dict invariant_dict(const InvariantResult& r)
{
    py::dict d;
    d["count"] = r.count;
    d["image_sizes"] = r.image_sizes;
    d["polynomial"] = r.polynomial;
    return d;
}

MoveId move_id(const std::string& name)
{
    for (int i = 0; i <= static_cast<int>(MoveId::SR2Reverse); ++i)
        if (move_name(static_cast<MoveId>(i)) == name)
            return static_cast<MoveId>(i);
    throw py::value_error("unknown move '" + name + "'");
}

std::string direction_name(MoveDirection d)
{
    switch (d) {
    case MoveDirection::Insert: return "insert";
    case MoveDirection::Delete: return "delete";
    case MoveDirection::Rearrange: return "apply";
    }
    return "?";
}

MoveDirection direction_from(const std::string& s)
{
    if (s == "insert")
        return MoveDirection::Insert;
    if (s == "delete")
        return MoveDirection::Delete;
    if (s == "apply")
        return MoveDirection::Rearrange;
    throw py::value_error("direction must be insert, delete or apply");
}

std::vector<Probe> probes_from(const std::vector<std::string>& tables)
{
    std::vector<Probe> out;
    for (std::size_t i = 0; i < tables.size(); ++i)
        out.push_back({"probe" + std::to_string(i), bundle_from(tables[i])});
    return out;
}

py::list sum_list(const FormalSum& f)
{
    py::list out;
    for (const auto& [fp, c] : f.terms())
        out.append(py::make_tuple(fp.polynomials, c));
    return out;
}

} // namespace

PYBIND11_MODULE(_semiquandle, m)
{
    m.doc() = "Semiquandle invariants of flat, singular and virtual links";

    py::register_exception<StructureError>(m, "StructureError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InvalidCode>(m, "InvalidCode", PyExc_ValueError);
    py::register_exception<MissingExtension>(m, "MissingExtension", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    m.def("named_table", [](const std::string& name) { return format_bundle(bundle_from(name)); }, py::arg("name"),
          "Table text of a named structure.");

    m.def(
        "verify",
        [](const std::string& table) {
            auto r = check_bundle(bundle_from(table));
            py::list violations;
            for (const auto& v : r.violations)
                violations.append(py::make_tuple(axiom_name(v.axiom), v.witness));
            py::dict d;
            d["valid"] = r.ok();
            d["structural"] = r.structural;
            d["violations"] = violations;
            return d;
        },
        py::arg("table"), "Axiom report for a table (text or name).");

    m.def(
        "enhanced_invariant",
        [](const std::string& table, std::optional<std::string> presentation, std::optional<std::string> code,
           std::optional<std::string> builtin, int jobs) {
            auto p = presentation_from(presentation, code, builtin);
            auto b = bundle_from(table);
            py::gil_scoped_release release;
            auto r = enhanced_invariant(p, b, SolveOptions{jobs});
            py::gil_scoped_acquire acquire;
            return invariant_dict(r);
        },
        py::arg("table"), py::kw_only(), py::arg("presentation") = py::none(), py::arg("code") = py::none(),
        py::arg("builtin") = py::none(), py::arg("jobs") = 1);

    m.def(
        "count_colorings",
        [](const std::string& table, std::optional<std::string> presentation, std::optional<std::string> code,
           std::optional<std::string> builtin, int jobs) {
            auto p = presentation_from(presentation, code, builtin);
            auto b = bundle_from(table);
            py::gil_scoped_release release;
            return count_colorings(p, b, SolveOptions{jobs});
        },
        py::arg("table"), py::kw_only(), py::arg("presentation") = py::none(), py::arg("code") = py::none(),
        py::arg("builtin") = py::none(), py::arg("jobs") = 1);

    m.def(
        "enumerate_semiquandles",
        [](int n, bool up_to_iso, std::uint64_t max_nodes, int jobs) {
            std::vector<SemiquandleTable> tables;
            {
                py::gil_scoped_release release;
                tables = enumerate_semiquandles(n, up_to_iso, SearchBudget{max_nodes, jobs});
            }
            std::vector<std::string> out;
            for (const auto& t : tables)
                out.push_back(format_bundle({t, std::nullopt, std::nullopt}));
            return out;
        },
        py::arg("n"), py::arg("up_to_iso") = false, py::arg("max_nodes") = SearchBudget{}.max_nodes,
        py::arg("jobs") = 1);

    m.def(
        "enumerate_singular_extensions",
        [](const std::string& table, bool up_to_iso) {
            auto b = bundle_from(table);
            std::vector<std::string> out;
            for (const auto& e : enumerate_singular_extensions(b.table, up_to_iso))
                out.push_back(format_bundle({b.table, e, std::nullopt}));
            return out;
        },
        py::arg("table"), py::arg("up_to_iso") = false);

    m.def(
        "automorphisms",
        [](const std::string& table) {
            std::vector<std::string> out;
            for (const auto& p : automorphisms(bundle_from(table)))
                out.push_back(p.to_cycles());
            return out;
        },
        py::arg("table"));

    m.def("extract_relations", [](const std::string& code) { return extract_relations(parse_code(code)).to_text(); },
          py::arg("code"));
    m.def("normalize_code", [](const std::string& code) { return format_code(normalize(parse_code(code))); },
          py::arg("code"));

    m.def(
        "random_code",
        [](std::uint64_t seed, int flat, int singular, int virt, int components) {
            return format_code(random_code(CodeBudget{flat, singular, virt, components}, seed));
        },
        py::arg("seed"), py::arg("flat") = 4, py::arg("singular") = 2, py::arg("virt") = 3, py::arg("components") = 2);

    m.def(
        "applicable_moves",
        [](const std::string& code, bool derived) {
            py::list out;
            for (const auto& mv : applicable_moves(parse_code(code), MoveCatalog::Flat, derived))
                out.append(py::make_tuple(move_name(mv.id), direction_name(mv.direction), mv.site, mv.variant));
            return out;
        },
        py::arg("code"), py::arg("derived") = false, "(move, direction, site, variant) tuples.");

    m.def(
        "apply_move",
        [](const std::string& code, const std::string& move, const std::string& direction, std::vector<int> site,
           int variant) {
            MoveSpec spec{move_id(move), direction_from(direction), std::move(site), variant, {}};
            return format_code(apply_move(parse_code(code), spec).code);
        },
        py::arg("code"), py::arg("move"), py::arg("direction"), py::arg("site"), py::arg("variant") = 0);

    m.def(
        "move_suite",
        [](int trials, std::uint64_t seed, int jobs) {
            SuiteReport r;
            {
                py::gil_scoped_release release;
                r = run_move_suite(SuiteOptions{trials, seed, jobs, true, CodeBudget{}});
            }
            py::dict d;
            d["seed"] = r.seed;
            d["trials"] = r.trials;
            d["comparisons"] = r.comparisons;
            d["moves"] = r.moves;
            d["inverse_failures"] = r.inverse_failures;
            d["failures"] = r.failures.size();
            d["ok"] = r.ok();
            return d;
        },
        py::arg("trials") = 500, py::arg("seed") = 1, py::arg("jobs") = 1);

    m.def(
        "s_sum",
        [](const std::string& k, const std::vector<std::string>& probes) {
            return sum_list(s_sum(parse_classical(k), probes_from(probes)));
        },
        py::arg("k"), py::arg("probes"));
    m.def(
        "g_sum",
        [](const std::string& k, const std::vector<std::string>& probes) {
            return sum_list(g_sum(parse_classical(k), probes_from(probes)));
        },
        py::arg("k"), py::arg("probes"));

    m.def(
        "distinguish",
        [](const std::string& k1, const std::string& k2, const std::vector<std::string>& probes) {
            auto r = distinguish(parse_classical(k1), parse_classical(k2), probes_from(probes));
            py::list w;
            for (const auto& x : r.witnesses)
                w.append(py::make_tuple(x.invariant, x.term.polynomials, x.coef1, x.coef2));
            py::dict d;
            d["s_differs"] = r.s_differs;
            d["g_differs"] = r.g_differs;
            d["witnesses"] = w;
            return d;
        },
        py::arg("k1"), py::arg("k2"), py::arg("probes"));

    m.def(
        "sqtool",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs one sqtool command; returns (exit code, stdout, stderr).");
}
