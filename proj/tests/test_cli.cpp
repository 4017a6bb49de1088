#include "doctest.h"

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "latcount/cli.hpp"
#include "latcount/errors.hpp"
#include "latcount/instance_io.hpp"
#include "test_util.hpp"

using namespace latcount;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("count command output") {
    RunResult r = run({"count", "fixtures/square.inst"});
    CHECK(r.code == 0);
    CHECK(r.out == "count=9\n");
    CHECK(r.err.empty());

    RunResult serial = run({"count", "fixtures/square.inst", "--serial"});
    CHECK(serial.out == "count=9\n");

    RunResult checked = run({"count", "fixtures/triangle.inst", "--crosscheck"});
    CHECK(checked.code == 0);
    CHECK(checked.out == "count=10\ncrosscheck=pass\n");
}

TEST_CASE("feasible command output") {
    RunResult r = run({"feasible", "fixtures/square.inst"});
    CHECK(r.code == 0);
    CHECK(r.out == "status=FEASIBLE\nwitness=0,0\n");

    RunResult c = run({"feasible", "fixtures/square.inst", "--crosscheck"});
    CHECK(c.code == 0);
    CHECK(c.out == "status=FEASIBLE\nwitness=0,0\ncrosscheck=pass\n");
}

TEST_CASE("optimize and optcount with objectives") {
    // the fixture file carries its own objective line
    RunResult r = run({"optimize", "fixtures/triangle.inst"});
    CHECK(r.code == 0);
    CHECK(r.out == "status=FEASIBLE\noptimum=3\nwitness=0,3\n");

    RunResult oc = run({"optcount", "fixtures/triangle.inst", "--objective", "1,1",
                        "--crosscheck"});
    CHECK(oc.code == 0);
    CHECK(oc.out ==
          "status=FEASIBLE\noptimum=3\noptimaCount=4\nwitness=0,3\ncrosscheck=pass\n");

    // --objective overrides the file
    RunResult ov = run({"optimize", "fixtures/triangle.inst", "--objective=-1,0"});
    CHECK(ov.out == "status=FEASIBLE\noptimum=0\nwitness=0,1\n");

    // no objective anywhere is a usage error
    RunResult missing = run({"optimize", "fixtures/square.inst"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("objective") != std::string::npos);

    RunResult badLen = run({"optimize", "fixtures/square.inst", "--objective", "1,1,1"});
    CHECK(badLen.code == 2);

    RunResult badTok = run({"optimize", "fixtures/square.inst", "--objective", "1,x"});
    CHECK(badTok.code == 2);
}

TEST_CASE("hyper command on the frozen examples") {
    RunResult stable = run({"hyper", "stable-multiset", "fixtures/k3.hg", "--crosscheck"});
    CHECK(stable.code == 0);
    CHECK(stable.out ==
          "status=FEASIBLE\noptimum=1\noptimaCount=3\nwitness=0,0,1\ncrosscheck=pass\n");

    RunResult cover = run({"hyper", "vertex-multicover", "fixtures/k3cover.hg", "--crosscheck"});
    CHECK(cover.code == 0);
    // the cover region is unbounded, so the box-scan crosscheck stands aside
    CHECK(cover.out ==
          "status=FEASIBLE\noptimum=2\noptimaCount=3\nwitness=0,1,1\ncrosscheck=skipped\n");

    RunResult dom = run({"hyper", "dominating-multiset", "fixtures/k3.hg"});
    CHECK(dom.out == "status=FEASIBLE\noptimum=1\noptimaCount=3\nwitness=0,0,1\n");

    RunResult open =
        run({"hyper", "dominating-multiset", "fixtures/k3.hg", "--open-neighborhood"});
    CHECK(open.out == "status=FEASIBLE\noptimum=2\noptimaCount=3\nwitness=0,1,1\n");

    RunResult std1 = run({"hyper", "multimatching", "fixtures/k3.hg", "--standard"});
    CHECK(std1.code == 0);
    CHECK(std1.out == "status=FEASIBLE\noptimum=3\noptimaCount=1\nwitness=1,1,1\n");

    // --standard needs an edge-indexed problem
    RunResult badStd = run({"hyper", "stable-multiset", "fixtures/k3.hg", "--standard"});
    CHECK(badStd.code == 2);

    // --open-neighborhood only makes sense for domination
    RunResult badOpen =
        run({"hyper", "stable-multiset", "fixtures/k3.hg", "--open-neighborhood"});
    CHECK(badOpen.code == 2);

    RunResult badProblem = run({"hyper", "no-such-problem", "fixtures/k3.hg"});
    CHECK(badProblem.code == 2);
}

TEST_CASE("stats command prints the matrix measurements") {
    RunResult r = run({"stats", "fixtures/square.inst"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "rows=4\ncols=2\nrowSparse=1\ncolSparse=2\nweakRowSparse=1\nweakColSparse=1\n"
          "norm1=1\nnormInf=2\nmaxNorm=1\ngamma1=1\ngammaInf=1\ntotn=1\n"
          "delta1=1\ndelta2=1\ndeltaGcd=1\ndetlbOrder=1\ndetlbValue=1\n");

    RunResult hg = run({"stats", "fixtures/k3.hg"});
    CHECK(hg.out.find("delta3=2\n") != std::string::npos);
    CHECK(hg.out.find("totn=2\n") != std::string::npos);
}

TEST_CASE("cli reports identical bytes across repeated runs") {
    RunResult a = run({"optcount", "fixtures/triangle.inst", "--objective", "1,1"});
    RunResult b = run({"optcount", "fixtures/triangle.inst", "--objective", "1,1"});
    CHECK(a.out == b.out);
    RunResult c = run({"hyper", "dominating-multiset", "fixtures/k3.hg"});
    RunResult d = run({"hyper", "dominating-multiset", "fixtures/k3.hg"});
    CHECK(c.out == d.out);
}

TEST_CASE("error paths use distinct exit codes") {
    CHECK(run({"count", "fixtures/nosuch.inst"}).code == 2);
    CHECK(run({"count", "fixtures/k3.hg"}).code == 2);  // wrong payload kind
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({}).code == 2);

    RunResult help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("Subcommands") != std::string::npos);

    setenv("LATCOUNT_BUDGET", "2", 1);
    RunResult budget = run({"count", "fixtures/square.inst"});
    unsetenv("LATCOUNT_BUDGET");
    CHECK(budget.code == 3);
    CHECK(budget.err.find("budget") != std::string::npos);
}

TEST_CASE("instance grammar round trips") {
    SUBCASE("canonical with rational rhs") {
        std::string text = "canonical 2 2\n1 1\n-1 0\nrhs 3/2 0\n";
        InstanceFile f = parse_instance(text);
        auto* c = std::get_if<CanonicalSystem>(&f.payload);
        REQUIRE(c != nullptr);
        CHECK(c->b()[0] == Rat(3, 2));
        CHECK_FALSE(f.objective.has_value());
        std::string w = write_instance(f);
        CHECK(write_instance(parse_instance(w)) == w);
    }

    SUBCASE("standard with caps and objective") {
        std::string text =
            "standard 1 2 with-mult\n1 1\nrhs 3\nmult 2 2\nobjective 1 0\n";
        InstanceFile f = parse_instance(text);
        auto* s = std::get_if<StandardSystem>(&f.payload);
        REQUIRE(s != nullptr);
        REQUIRE(s->u().has_value());
        CHECK((*s->u())[0] == 2);
        REQUIRE(f.objective.has_value());
        CHECK((*f.objective)[1] == 0);
        std::string w = write_instance(f);
        CHECK(write_instance(parse_instance(w)) == w);
    }

    SUBCASE("hypergraph with bounds, weights and caps") {
        std::string text =
            "hypergraph 3 2\n1 2\n2 3\nedgebounds -inf 1\nedgebounds -inf 1\n"
            "vertexbounds 0 inf\nvertexbounds 0 inf\nvertexbounds 0 inf\n"
            "weights 1 2\nmult 1 1\n";
        InstanceFile f = parse_instance(text);
        auto* h = std::get_if<HypergraphInstance>(&f.payload);
        REQUIRE(h != nullptr);
        CHECK(h->vertexCount == 3);
        REQUIRE(h->edges.size() == 2);
        CHECK(h->edges[0] == std::vector<std::size_t>{0, 1});
        CHECK(h->edges[1] == std::vector<std::size_t>{1, 2});
        REQUIRE(h->edgeHi.size() == 2);
        CHECK(*h->edgeHi[0] == 1);
        CHECK_FALSE(h->edgeLo[0].has_value());
        CHECK(h->weights == testutil::ints({1, 2}));
        std::string w = write_instance(f);
        CHECK(write_instance(parse_instance(w)) == w);
    }

    SUBCASE("comments and blank lines are ignored") {
        std::string text = "# box\ncanonical 2 1\n\n1\n# lower\n-1\nrhs 2 0\n";
        InstanceFile f = parse_instance(text);
        CHECK(std::holds_alternative<CanonicalSystem>(f.payload));
    }

    SUBCASE("fixture files survive the round trip") {
        for (const char* path :
             {"fixtures/square.inst", "fixtures/triangle.inst", "fixtures/k3.hg",
              "fixtures/k3cover.hg"}) {
            InstanceFile f = load_instance(path);
            std::string w = write_instance(f);
            CHECK(write_instance(parse_instance(w)) == w);
        }
    }
}

TEST_CASE("instance grammar rejects malformed input with line numbers") {
    SUBCASE("short coefficient row") {
        try {
            parse_instance("canonical 1 2\n1\nrhs 3\n");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }

    SUBCASE("bad header") {
        CHECK_THROWS_AS(parse_instance("polytope 1 1\n1\nrhs 0\n"), ParseError);
        CHECK_THROWS_AS(parse_instance(""), ParseError);
        CHECK_THROWS_AS(parse_instance("canonical 0 2\nrhs\n"), ParseError);
    }

    SUBCASE("rhs arity") {
        CHECK_THROWS_AS(parse_instance("canonical 1 1\n2\nrhs 1 2\n"), ParseError);
        CHECK_THROWS_AS(parse_instance("canonical 1 1\n2\n"), ParseError);
    }

    SUBCASE("mult marker must match the mult line") {
        CHECK_THROWS_AS(parse_instance("standard 1 2 with-mult\n1 1\nrhs 3\n"), ParseError);
        CHECK_THROWS_AS(parse_instance("standard 1 2\n1 1\nrhs 3\nmult 2 2\n"), ParseError);
    }

    SUBCASE("negative finite bounds are invalid") {
        CHECK_THROWS_AS(
            parse_instance("hypergraph 2 1\n1 2\nedgebounds -2 5\n"), ParseError);
    }

    SUBCASE("vertex indices are 1-based and in range") {
        CHECK_THROWS_AS(parse_instance("hypergraph 2 1\n0 1\n"), ParseError);
        CHECK_THROWS_AS(parse_instance("hypergraph 2 1\n1 3\n"), ParseError);
    }

    SUBCASE("zero denominators are rejected") {
        CHECK_THROWS_AS(parse_instance("canonical 1 1\n1\nrhs 3/0\n"), ParseError);
    }

    SUBCASE("missing files carry line zero") {
        try {
            load_instance("fixtures/nosuch.inst");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 0);
        }
    }
}
