#include "doctest.h"
#include "oracles.hpp"

#include "cuspedkit/blowup.hpp"
#include "cuspedkit/errors.hpp"
#include "cuspedkit/generators.hpp"
#include "cuspedkit/xw_io.hpp"

#include <cctype>
#include <sstream>

using namespace cuspedkit;

namespace {

std::string serialize(const XWPair& p) {
    std::ostringstream os;
    write_xw(os, p);
    return os.str();
}

// Free reduction of a word over a, A, b, B.
std::string reduce(const std::string& w) {
    std::string out;
    for (char c : w) {
        const char inv = std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                                   : static_cast<char>(std::tolower(c));
        if (!out.empty() && out.back() == inv) out.pop_back();
        else out.push_back(c);
    }
    return out;
}

}  // namespace

TEST_CASE("relhyp ball sizes and cosets") {
    const RelHypInstance r2 = gen_relhyp(2);
    CHECK(r2.ball.order() == 17);
    CHECK(r2.words[0].empty());
    CHECK(r2.ball.label(0) == "e");
    // Cayley edges are right multiplication by a generator
    std::map<std::string, VertexId> id;
    for (std::size_t i = 0; i < r2.words.size(); ++i) id[r2.words[i]] = static_cast<VertexId>(i);
    std::size_t expected_edges = 0;
    for (const auto& w : r2.words)
        for (char g : std::string("aAbB")) {
            const std::string v = reduce(w + g);
            if (id.contains(v) && w < v) ++expected_edges;
        }
    CHECK(r2.ball.edge_count() == expected_edges);

    const RelHypInstance r3 = gen_relhyp(3);
    CHECK(r3.ball.order() == 1 + 4 + 12 + 36);
    const VertexSet& ec = r3.cosets[r3.coset_of[0]];
    CHECK(ec.size() == 7);
    CHECK(induced(r3.ball, ec).edge_count() == 6);
    CHECK(diameter(induced(r3.ball, ec)) == Distance(6));

    // cosets partition the ball; each trace is ordered by exponent and forms a path
    VertexSet all;
    for (const auto& trace : r3.cosets) {
        const VertexSet c = sets::make(trace);
        CHECK(sets::disjoint(all, c));
        all = sets::unite(all, c);
        for (std::size_t i = 0; i + 1 < trace.size(); ++i) CHECK(r3.ball.adjacent(trace[i], trace[i + 1]));
        const Graph path = induced(r3.ball, c);
        CHECK(path.edge_count() + 1 == path.order());
        CHECK(connected_components(path).size() == 1);
    }
    CHECK(all == r3.ball.vertex_set());

    // inner vertices: words of length <= R - margin
    for (VertexId v : r3.ball.vertices()) CHECK(sets::contains(r3.inner, v) == (r3.words[v].size() <= 2));

    CHECK_THROWS_AS(gen_relhyp(1), InvalidInput);
    CHECK_THROWS_AS(gen_relhyp(3, 3), InvalidInput);
}

TEST_CASE("relhyp pair structure") {
    const RelHypInstance inst = gen_relhyp(3);
    const XWPair& p = inst.xw;
    REQUIRE(p.blowup());
    CHECK(p.blowup()->support().edge_count() == 0);
    CHECK(p.maxsimps().size() == inst.ball.order());
    for (const Simplex& s : p.maxsimps()) CHECK(s.size() == 2);
    CHECK(p.w().edge_count() == inst.ball.edge_count());
    CHECK(has_cleanish(p.blowup()->support()).ok);
    CHECK(complexity(p) == 3);

    // saturation of a coset class is its apex alone
    for (VertexId apex : inst.coset_apex) CHECK(saturation(p, Simplex{apex}) == VertexSet{apex});

    // the augmented graph is the ball with each coset coned off
    GraphBuilder b;
    for (VertexId v : p.x().vertices()) b.add_vertex(v, p.x().label(v));
    for (const auto& [u, v] : inst.ball.edges()) b.add_edge(u, v);
    for (std::size_t c = 0; c < inst.cosets.size(); ++c)
        for (VertexId v : inst.cosets[c]) b.add_edge(inst.coset_apex[c], v);
    for (const auto& [i, j] : p.wedges()) {
        for (VertexId u : p.maxsimps()[i].vertices())
            for (VertexId v : p.maxsimps()[j].vertices())
                if (u != v) b.add_edge_if_absent(u, v);
    }
    CHECK(augmented_graph(p).edges() == std::move(b).build().edges());
}

TEST_CASE("direct augmented space") {
    const RelHypInstance inst = gen_relhyp(2);
    CHECK(gen_augmented_direct(inst, 0) == inst.ball);
    const Graph g = gen_augmented_direct(inst, 3);
    std::size_t expected = 0;
    for (const auto& c : inst.cosets) expected += c.size() * 4;
    CHECK(g.order() == expected);
    // each coset grows a horoball over its exponent path
    for (const auto& c : inst.cosets) {
        VertexSet layer;
        for (VertexId x : c) layer.push_back(static_cast<VertexId>(inst.ball.order() + 2 * inst.ball.order() + x));
        const Graph top = induced(g, layer);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                CHECK(top.adjacent(layer[i], layer[j]) == (std::abs(inst.exponent[c[i]] - inst.exponent[c[j]]) <= 8));
    }
}

TEST_CASE("augmented iso at small radius and its mutation control") {
    const RelHypInstance inst = gen_relhyp(2);
    const IsoCheck ok = check_augmented_iso(inst, 2);
    CHECK(ok.ok);
    const IsoCheck autocap = check_augmented_iso(inst, auto_cusped_cap(inst.xw));
    CHECK(autocap.ok);

    auto edges = inst.xw.wedges();
    edges.erase(edges.begin());
    const XWPair mutated = inst.xw.with_wedges(edges);
    const IsoCheck bad = check_augmented_iso(inst, 2, &mutated);
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.detail.empty());
}

TEST_CASE("girth-5 supports and random blowups") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Graph s = gen_girth5_support(seed, 4 + seed % 9);
        CHECK(connected_components(s).size() == 1);
        // no triangles and no squares: every pair of vertices shares at most one neighbour, none when adjacent
        for (VertexId a : s.vertices())
            for (VertexId b : s.vertices()) {
                if (a >= b) continue;
                const std::size_t common = sets::intersect(s.neighbors(a), s.neighbors(b)).size();
                CHECK(common <= (s.adjacent(a, b) ? 0u : 1u));
            }
    }
    CHECK(serialize(gen_random_blowup(5, 6, 3, 0.5)) == serialize(gen_random_blowup(5, 6, 3, 0.5)));
    CHECK(gen_random_blowup(5, 6, 3, 0.0).w().edge_count() == 0);

    // W-edges join maximal simplices sharing a codimension-one face
    const XWPair p = gen_random_blowup(9, 6, 3, 0.7);
    for (const auto& [a, b] : p.wedges()) {
        const VertexSet& x = p.maxsimps()[a].vertices();
        const VertexSet& y = p.maxsimps()[b].vertices();
        CHECK(sets::intersect(x, y).size() + 1 == x.size());
        CHECK(x.size() == y.size());
    }
}

TEST_CASE("maximal simplex count of a blowup over C5") {
    const Graph c5 = gen_family(FamilyKind::Cycle, 5);
    const XWPair p = random_blowup_over(c5, 4, 2, 0.0);
    const BlowupGraph& b = *p.blowup();
    std::size_t expected = 0;
    for (const auto& [u, v] : c5.edges()) expected += b.base_of(u).size() * b.base_of(v).size();
    CHECK(p.maxsimps().size() == expected);
    CHECK(p.maxsimps().size() == oracle::maximal_cliques(p.x()).size());
}

TEST_CASE("structured families") {
    CHECK(gen_family(FamilyKind::Path, 5).edge_count() == 4);
    const Graph c6 = gen_family(FamilyKind::Cycle, 6);
    CHECK(c6.edge_count() == 6);
    for (VertexId v : c6.vertices()) CHECK(c6.degree(v) == 2);
    const Graph g3 = gen_family(FamilyKind::Grid, 3);
    CHECK(g3.order() == 9);
    CHECK(g3.edge_count() == 12);
    const Graph q = gen_family(FamilyKind::Quasiline, 6);
    CHECK(q.edge_count() == 5 + 4);
    CHECK(parse_family_kind("grid") == FamilyKind::Grid);
    CHECK_THROWS_AS(parse_family_kind("torus"), InvalidInput);
    CHECK_THROWS_AS(gen_family(FamilyKind::Cycle, 2), InvalidInput);
    CHECK(gen_gnp(20, 0.3, 1) == gen_gnp(20, 0.3, 1));
    CHECK(gen_gnp(20, 0.0, 1).edge_count() == 0);
    CHECK(gen_gnp(20, 1.0, 1).edge_count() == 190);
}

TEST_CASE("pair text format") {
    const XWPair p = gen_random_blowup(2, 5, 2, 0.5);
    const std::string text = serialize(p);
    std::istringstream in(text);
    const XWPair back = read_xw(in);
    CHECK(back.x() == p.x());
    CHECK(back.maxsimps() == p.maxsimps());
    CHECK(back.wedges() == p.wedges());
    REQUIRE(back.blowup());
    CHECK(back.blowup()->support().edges() == p.blowup()->support().edges());
    CHECK(serialize(back) == text);

    const XWPair plain(gen_family(FamilyKind::Cycle, 5), {{0, 1}});
    std::istringstream pin(serialize(plain));
    const XWPair pback = read_xw(pin);
    CHECK(pback.blowup() == nullptr);
    CHECK(pback.wedges() == plain.wedges());

    std::istringstream bad_simp("v 0\nv 1\ne 0 1\nwsimp 0\n");
    CHECK_THROWS_AS(read_xw(bad_simp), InvalidInput);
    std::istringstream bad_edge("v 0\nv 1\ne 0 1\nwedge 0 3\n");
    CHECK_THROWS_AS(read_xw(bad_edge), InvalidInput);
    std::istringstream bad_cone("v 0\nv 1\nv 2\ne 0 1\ne 1 2\ncone 0 1 2\n");
    CHECK_THROWS_AS(read_xw(bad_cone), InvalidInput);
    std::istringstream loop("v 0\nv 1\ne 0 1\nwedge 0 0\n");
    CHECK_THROWS_AS(read_xw(loop), InvalidInput);
}
