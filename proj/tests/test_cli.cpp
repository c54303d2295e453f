#include "doctest.h"

#include "cuspedkit/cli.hpp"

#include <sstream>

using namespace cuspedkit;

namespace {

struct Run {
    int status = 0;
    std::string out, err;
};

Run run(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    Run r;
    r.status = run_cli(args, in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);)
        if (l == line) return true;
    return false;
}

bool has_prefix_line(const std::string& text, const std::string& prefix) {
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);)
        if (l.rfind(prefix, 0) == 0) return true;
    return false;
}

}  // namespace

TEST_CASE("relhyp pair through the axiom checker") {
    const Run gen = run({"gen", "relhyp", "--radius", "2"});
    REQUIRE(gen.status == 0);
    CHECK(gen.out.rfind("# cuspedkit gen relhyp --radius 2", 0) == 0);
    const Run chk = run({"check", "chhs", "--relative"}, gen.out);
    CHECK(chk.status == 0);
    CHECK(has_line(chk.out, "CONST complexity 3"));
    CHECK(has_prefix_line(chk.out, "AXIOM 5 PASS"));

    const Run wrong = run({"check", "chhs", "--relative", "--complexity", "2"}, gen.out);
    CHECK(wrong.status == 1);
    CHECK(has_prefix_line(wrong.out, "AXIOM 1 FAIL"));
}

TEST_CASE("delta and distortion") {
    const Run tree = run({"delta"}, "v 0\nv 1\nv 2\nv 3\ne 0 1\ne 1 2\ne 1 3\n");
    CHECK(tree.status == 0);
    CHECK(has_line(tree.out, "DELTA 0"));

    const Run c4 = run({"delta", "--jobs", "2"}, "v 0\nv 1\nv 2\nv 3\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n");
    CHECK(has_line(c4.out, "DELTA 1"));

    const Run dist = run({"distort", "--sub", "0,2"}, "v 0\nv 1\nv 2\ne 0 1\ne 1 2\n");
    CHECK(dist.status == 0);
    CHECK(has_prefix_line(dist.out, "DISTORT "));
}

TEST_CASE("horoball lower bound on a long path") {
    const Run path = run({"gen", "family", "--kind", "path", "--size", "64"});
    REQUIRE(path.status == 0);
    const Run chk = run({"check", "horoball", "--depth", "auto"}, path.out);
    CHECK(chk.status == 0);
    CHECK(has_line(chk.out, "CHECK lower_bound PASS"));
    CHECK(has_line(chk.out, "CONST cap 8"));

    const Run hb = run({"horoball", "--depth", "2"}, "v 0\nv 1\ne 0 1\n");
    CHECK(hb.status == 0);
    CHECK(hb.out.find("1@2") != std::string::npos);
}

TEST_CASE("random blowup through cusp and the cusped checks") {
    const Run gen = run({"gen", "blowup", "--seed", "3", "--support", "4", "--base-max", "2", "--density", "0.6"});
    REQUIRE(gen.status == 0);
    const Run bundle = run({"cusp", "--depth", "auto"}, gen.out);
    REQUIRE(bundle.status == 0);
    const Run chk = run({"check", "cusped"}, bundle.out);
    CHECK(chk.status == 0);
    for (const char* name : {"links_lemma", "nesting_correspondence", "cone_link_is_horoball", "duaug_embedding"})
        CHECK(has_prefix_line(chk.out, std::string("CHECK ") + name + " PASS"));
    // the same checks straight from the source pair
    const Run direct = run({"check", "cusped", "--depth", "auto"}, gen.out);
    CHECK(direct.status == 0);

    const Run axioms = run({"check", "chhs", "--relative"}, bundle.out);
    CHECK(axioms.status == 0);
}

TEST_CASE("blowup and dot export") {
    const Run b = run({"blowup"}, "v 0\nv 1\ne 0 1\nbase 0 a b\nbase 1 c\n");
    REQUIRE(b.status == 0);
    CHECK(has_prefix_line(b.out, "cone 0"));
    CHECK(run({"blowup"}, "v 0\nv 1\ne 0 1\nbase 0 a\n").status == 2);
    CHECK(run({"blowup", "--allow-empty"}, "v 0\nv 1\ne 0 1\nbase 0 a\n").status == 0);

    const Run h = run({"horoball", "--depth", "1"}, "v 0\nv 1\ne 0 1\n");
    const Run dot = run({"export-dot"}, h.out);
    CHECK(dot.status == 0);
    CHECK(dot.out.find("graph") != std::string::npos);
    CHECK(dot.out.find("rank=same") != std::string::npos);
}

TEST_CASE("usage errors and determinism") {
    CHECK(run({}).status == 2);
    CHECK(run({"frobnicate"}).status == 2);
    CHECK(run({"delta", "--jobs", "0"}, "v 0\n").status == 2);
    CHECK(run({"delta"}, "v 0\ne 0 9\n").status == 2);
    CHECK(run({"horoball", "--depth", "99"}, "v 0\n").status == 2);
    CHECK(run({"--help"}).status == 0);

    const std::vector<std::string> args{"gen", "blowup", "--seed", "11", "--support", "5"};
    CHECK(run(args).out == run(args).out);
    const Run g = run({"gen", "relhyp", "--radius", "2"});
    CHECK(run({"check", "chhs"}, g.out).out == run({"check", "chhs"}, g.out).out);
}
