#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "sq/cli.hpp"

#ifndef SQ_DATA_DIR
#error "SQ_DATA_DIR must point at the data directory"
#endif

using namespace sq;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(SQ_DATA_DIR) + "/" + name; }

} // namespace

TEST_CASE("verify")
{
    CHECK(run({"verify", "--table", data("mt.tbl")}).code == ExitOk);
    CHECK(run({"verify", "--table", "t_singular"}).code == ExitOk);
    auto bad = run({"verify", "--table", data("bad.tbl")});
    CHECK(bad.code == ExitInvalid);
    CHECK(bad.out.find("axiom 0-up violated at 2 1") != std::string::npos);
    auto j = run({"verify", "--table", data("bad.tbl"), "--json"});
    CHECK(nlohmann::json::parse(j.out)["valid"] == false);
}

TEST_CASE("usage and parse failures exit 2")
{
    CHECK(run({}).code == ExitUsage);
    CHECK(run({"frobnicate"}).code == ExitUsage);
    CHECK(run({"verify", "--table", "semiquandle 2\n1 x\n"}).code == ExitUsage);
    CHECK(run({"count", "--table", "mt", "--code", "comp: F1.sup F2.sub"}).code == ExitUsage);
    CHECK(run({"count", "--table", "mt", "--builtin", "singular_unknot_1"}).code == ExitUsage);
}

TEST_CASE("count and poly")
{
    auto c = run({"count", "--table", data("mt.tbl"), "--presentation", data("kishino.sq")});
    REQUIRE(c.code == ExitOk);
    auto j = nlohmann::json::parse(c.out);
    CHECK(j["count"] == 16);
    CHECK(run({"count", "--table", "mt", "--builtin", "unknot"}).out.find("\"count\": 4") != std::string::npos);

    auto p = run({"poly", "--table", data("x132_operator.tbl"), "--code", data("su1.code")});
    CHECK(p.code == ExitOk);
    CHECK(p.out == "9z^3\n");
    CHECK(run({"poly", "--table", "x132_operator", "--presentation", data("tct.sq")}).out == "0\n");
    CHECK(run({"poly", "--table", "x132_operator", "--code", data("tct.code")}).out == "0\n");
    auto pj = nlohmann::json::parse(run({"poly", "--table", "mt", "--builtin", "unknot", "--json"}).out);
    CHECK(pj["polynomial"] == "2z + 2z^4");
}

TEST_CASE("invalid tables are rejected before solving")
{
    CHECK(run({"count", "--table", data("bad.tbl"), "--builtin", "unknot"}).code == ExitInvalid);
}

TEST_CASE("enumerate")
{
    auto e = run({"enumerate", "--kind", "semiquandle", "--n", "2"});
    CHECK(e.code == ExitOk);
    CHECK(e.out.find("count: 2") != std::string::npos);
    CHECK(run({"enumerate", "--kind", "semiquandle", "--n", "3", "--iso"}).out.find("count: 5") != std::string::npos);
    CHECK(run({"enumerate", "--kind", "singular", "--table", "x132"}).out.find("count: 27") != std::string::npos);
    CHECK(run({"enumerate", "--kind", "virtual", "--table", "mt", "--iso"}).out.find("count: 2") != std::string::npos);
    CHECK(run({"enumerate", "--kind", "semiquandle", "--n", "4", "--max-nodes", "10"}).code == ExitBudget);
    CHECK(run({"enumerate", "--kind", "semiquandle", "--n", "3", "--jobs", "3"}).out
          == run({"enumerate", "--kind", "semiquandle", "--n", "3"}).out);
}

TEST_CASE("auto")
{
    auto a = nlohmann::json::parse(run({"auto", "--table", "x132_operator", "--json"}).out);
    CHECK(a["automorphisms"].size() == 3);
}

TEST_CASE("moves-test output does not depend on jobs")
{
    auto one = run({"moves-test", "--trials", "40", "--seed", "5", "--json"});
    auto four = run({"moves-test", "--trials", "40", "--seed", "5", "--jobs", "4", "--json"});
    CHECK(one.code == ExitOk);
    CHECK(one.out == four.out);
    CHECK(nlohmann::json::parse(one.out)["failures"].size() == 0);
}

TEST_CASE("vassiliev")
{
    auto v = run({"vassiliev", "--k1", data("unknot.code"), "--k2", data("g_only.code"), "--probes",
                  data("t_singular.tbl"), "--expect", "distinct"});
    CHECK(v.code == ExitOk);
    auto j = nlohmann::json::parse(v.out);
    CHECK(j["s_differs"] == false);
    CHECK(j["g_differs"] == true);
    CHECK(run({"vassiliev", "--k1", data("unknot.code"), "--k2", data("unknot.code"), "--probes", "t_singular",
               "--expect", "distinct"})
              .code
          == ExitInvalid);
    CHECK(run({"vassiliev", "--k1", data("unknot.code"), "--k2", data("g_only.code"), "--probes", "mt"}).code
          == ExitUsage);
}
