#include "doctest.h"
#include "oracles.hpp"

#include "cuspedkit/chhs.hpp"
#include "cuspedkit/errors.hpp"
#include "cuspedkit/generators.hpp"

using namespace cuspedkit;

namespace {

BlowupGraph toy_blowup() {
    BlowupData d;
    d.support = oracle::make_graph(2, {{0, 1}});
    d.bases[0] = {"a", "b"};
    d.bases[1] = {"c"};
    return build_blowup(d);
}

struct OracleClass {
    VertexSet rep;
    VertexSet saturation;
    std::vector<VertexSet> members;
};

// Group every non-maximal simplex by its link.
std::map<VertexSet, OracleClass> oracle_classes(const Graph& x) {
    std::map<VertexSet, OracleClass> out;
    for (const auto& s : oracle::all_simplices(x)) {
        const VertexSet l = oracle::link(x, s);
        if (l.empty()) continue;
        auto [it, fresh] = out.try_emplace(l);
        if (fresh || s < it->second.rep) it->second.rep = s;
        it->second.saturation = sets::unite(it->second.saturation, s);
        it->second.members.push_back(s);
    }
    return out;
}

std::uint32_t oracle_complexity(const Graph& x) {
    std::vector<VertexSet> links;
    for (const auto& [l, _] : oracle_classes(x)) links.push_back(l);
    links.push_back({});
    std::sort(links.begin(), links.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<std::uint32_t> len(links.size(), 1);
    std::uint32_t best = 0;
    for (std::size_t i = 0; i < links.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (links[j].size() < links[i].size() &&
                std::includes(links[i].begin(), links[i].end(), links[j].begin(), links[j].end()))
                len[i] = std::max(len[i], len[j] + 1);
        best = std::max(best, len[i]);
    }
    return best;
}

std::set<std::pair<VertexId, VertexId>> oracle_augmented_edges(const XWPair& p) {
    std::set<std::pair<VertexId, VertexId>> out;
    for (const auto& e : p.x().edges()) out.insert(e);
    for (const auto& [i, j] : p.wedges())
        for (VertexId a : p.maxsimps()[i].vertices())
            for (VertexId b : p.maxsimps()[j].vertices())
                if (a != b) out.insert({std::min(a, b), std::max(a, b)});
    return out;
}

XWPair random_pair(std::mt19937_64& rng, std::size_t n, double p, double wp) {
    const Graph x = oracle::random_graph(n, p, rng);
    XWPair bare(x, {});
    std::vector<WEdge> we;
    std::bernoulli_distribution coin(wp);
    for (std::size_t i = 0; i < bare.maxsimps().size(); ++i)
        for (std::size_t j = i + 1; j < bare.maxsimps().size(); ++j)
            if (coin(rng)) we.emplace_back(i, j);
    return bare.with_wedges(we);
}

Relation oracle_relation(const Graph& x, const VertexSet& l1, const VertexSet& l2) {
    if (l1 == l2) return Relation::Equal;
    if (std::includes(l2.begin(), l2.end(), l1.begin(), l1.end())) return Relation::NestedIn;
    if (std::includes(l1.begin(), l1.end(), l2.begin(), l2.end())) return Relation::Contains;
    const VertexSet ll = oracle::link(x, l1);
    return std::includes(ll.begin(), ll.end(), l2.begin(), l2.end()) ? Relation::Orthogonal : Relation::Transverse;
}

}  // namespace

TEST_CASE("classes of a single edge") {
    const XWPair p(oracle::make_graph(2, {{0, 1}}), {});
    const auto& cs = domain_classes(p);
    REQUIRE(cs.size() == 3);
    CHECK(cs[0].link_set == VertexSet{0});
    CHECK(cs[0].representative == Simplex{1});
    CHECK(cs[1].link_set == VertexSet{0, 1});
    CHECK(cs[1].representative == Simplex{});
    CHECK(cs[2].representative == Simplex{0});
    CHECK(complexity(p) == 3);
    CHECK(p.w().order() == 1);
}

TEST_CASE("complete graphs have singleton links in codimension one") {
    GraphBuilder b;
    for (VertexId i = 0; i < 5; ++i) b.add_vertex(i);
    for (VertexId i = 0; i < 5; ++i)
        for (VertexId j = i + 1; j < 5; ++j) b.add_edge(i, j);
    const XWPair p(std::move(b).build(), {});
    for (VertexId i = 0; i < 5; ++i) {
        VertexSet face;
        for (VertexId j = 0; j < 5; ++j)
            if (j != i) face.push_back(j);
        CHECK(domain_classes(p)[class_of(p, Simplex(face))].link_set == VertexSet{i});
    }
    CHECK(complexity(p) == 6);
    const AxiomReport r = check_axioms(p);
    CHECK(r.ok());
    for (std::size_t i = 0; i < 5; ++i) CHECK(r.axioms[i].verdict != Verdict::Fail);
}

TEST_CASE("classes, saturations and complexity match subset enumeration") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 30; ++t) {
        const XWPair p = random_pair(rng, 4 + rng() % 8, 0.45, 0.3);
        const auto want = oracle_classes(p.x());
        const auto& got = domain_classes(p);
        REQUIRE(got.size() == want.size());
        std::size_t i = 0;
        for (const auto& [l, oc] : want) {
            CHECK(got[i].link_set == l);
            CHECK(got[i].representative.vertices() == oc.rep);
            CHECK(got[i].saturation == oc.saturation);
            std::vector<VertexSet> mem;
            for (const auto& s : members(p, got[i])) mem.push_back(s.vertices());
            CHECK(mem == oc.members);
            ++i;
        }
        CHECK(complexity(p) == oracle_complexity(p.x()));
    }
}

TEST_CASE("blowup fast path agrees with generic class enumeration") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 25; ++t) {
        BlowupData d;
        d.support = oracle::random_graph(1 + rng() % 6, 0.5, rng);
        std::size_t label = 0;
        for (VertexId v : d.support.vertices())
            for (std::size_t i = 0, k = 1 + rng() % 3; i < k; ++i) d.bases[v].push_back("z" + std::to_string(label++));
        const BlowupGraph x = build_blowup(d);
        const XWPair fast(x, {});
        const XWPair generic(x.graph(), {});
        const auto& a = domain_classes(fast);
        const auto& b = domain_classes(generic);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].link_set == b[i].link_set);
            CHECK(a[i].representative == b[i].representative);
            CHECK(a[i].saturation == b[i].saturation);
            CHECK(members(fast, a[i]) == members(generic, b[i]));
        }
        CHECK(complexity(fast) == complexity(generic));
    }
}

TEST_CASE("toy blowup saturation, geometry and relations") {
    const XWPair p(toy_blowup(), {});
    CHECK(saturation(p, Simplex{0, 1, 2}) == VertexSet{0, 1, 2, 3});
    CHECK_THROWS_AS(saturation(p, Simplex{0, 1, 2, 4}), InvalidInput);

    const auto& cs = domain_classes(p);
    const DomainClass& dv = cs[class_of(p, Simplex{0, 1, 2})];
    const DomainClass& du = cs[class_of(p, Simplex{0, 1, 4})];
    CHECK(du.link_set == VertexSet{2, 3});
    CHECK(y_graph(p, dv).vertex_set() == VertexSet{4});
    CHECK(relation(p, du, dv) == Relation::Orthogonal);
    CHECK(relation(p, dv, du) == Relation::Orthogonal);
    CHECK(relation(p, dv, dv) == Relation::Equal);
    for (std::size_t w = 0; w < p.maxsimps().size(); ++w) CHECK(project_pi(p, dv, w) == VertexSet{4});
}

TEST_CASE("empty saturation and augmented graphs") {
    const Graph c5 = gen_family(FamilyKind::Cycle, 5);
    const XWPair bare(c5, {});
    const DomainClass& empty = domain_classes(bare)[class_of(bare, Simplex{})];
    CHECK(empty.saturation.empty());
    CHECK(y_graph(bare, empty) == augmented_graph(bare));
    CHECK(augmented_link(bare, empty) == augmented_graph(bare));
    CHECK(augmented_graph(bare) == c5);

    // two disjoint maximal simplices joined by one W-edge gain a complete bipartite block
    const Graph two = oracle::make_graph(4, {{0, 1}, {2, 3}});
    const XWPair joined(two, {{0, 1}});
    CHECK(augmented_graph(joined).edge_count() == 6);

    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        const XWPair p = random_pair(rng, 9, 0.4, 0.3);
        std::set<std::pair<VertexId, VertexId>> got;
        for (const auto& e : augmented_graph(p).edges()) got.insert(e);
        CHECK(got == oracle_augmented_edges(p));
    }
}

TEST_CASE("geometry invariants on random pairs") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; ++t) {
        const XWPair p = random_pair(rng, 8, 0.45, 0.25);
        const auto& cs = domain_classes(p);
        for (const auto& c : cs) {
            const DomainGeometry g = geometry(p, c);
            CHECK(g.y.vertex_set() == sets::subtract(p.x().vertex_set(), c.saturation));
            CHECK(g.c.vertex_set() == c.link_set);
            for (const auto& [a, b] : g.c.edges()) CHECK(g.y.adjacent(a, b));
            CHECK(induced(p.augmented(), g.y.vertex_set()) == g.y);
            // every member of the class gives the same Y
            for (const auto& m : members(p, c)) CHECK(domain_classes(p)[class_of(p, m)].link_set == c.link_set);
        }
        for (const auto& a : cs)
            for (const auto& b : cs) {
                const Relation r = relation(p, a, b);
                CHECK(r == oracle_relation(p.x(), a.link_set, b.link_set));
                const Relation back = relation(p, b, a);
                if (r == Relation::Orthogonal || r == Relation::Transverse || r == Relation::Equal) CHECK(back == r);
                if (r == Relation::NestedIn) CHECK(back == Relation::Contains);
            }
    }
}

TEST_CASE("projections are slack-one closest points") {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 15; ++t) {
        const XWPair p = random_pair(rng, 8, 0.4, 0.3);
        for (const auto& c : domain_classes(p)) {
            const DomainGeometry g = geometry(p, c);
            const oracle::Metric dy(g.y);
            for (std::size_t w = 0; w < p.maxsimps().size(); ++w) {
                VertexSet src;
                for (VertexId v : p.maxsimps()[w].vertices())
                    if (g.y.contains(v)) src.push_back(v);
                if (src.empty()) {
                    CHECK_THROWS_AS(project_pi(p, g, w), LemmaViolation);
                    continue;
                }
                VertexSet want;
                for (VertexId x : src) {
                    long best = oracle::kInf;
                    for (VertexId y : c.link_set)
                        if (dy(x, y) != oracle::kInf && (best == oracle::kInf || dy(x, y) < best)) best = dy(x, y);
                    if (best == oracle::kInf) continue;
                    for (VertexId y : c.link_set)
                        if (dy(x, y) != oracle::kInf && dy(x, y) <= best + 1) want.push_back(y);
                }
                CHECK(project_pi(p, g, w) == sets::make(want));
                for (VertexId v : p.maxsimps()[w].vertices())
                    if (sets::contains(c.link_set, v)) CHECK(sets::contains(project_pi(p, g, w), v));
            }
        }
    }
}

TEST_CASE("rho sets, rho maps and coordinate distances on the relhyp toy") {
    const RelHypInstance inst = gen_relhyp(2);
    const XWPair& p = inst.xw;
    const auto& cs = domain_classes(p);
    const std::size_t e_coset = inst.coset_of[0];
    const DomainClass& ce = cs[class_of(p, Simplex{inst.coset_apex[e_coset]})];
    CHECK(ce.saturation == VertexSet{inst.coset_apex[e_coset]});
    CHECK(ce.link_set == sets::make(inst.cosets[e_coset]));
    const DomainClass& top = cs[class_of(p, Simplex{})];

    // C of a coset class is the coset path
    const Graph cpath = augmented_link(p, ce);
    CHECK(cpath.edge_count() + 1 == cpath.order());
    CHECK(diameter(cpath) == Distance(static_cast<std::uint32_t>(cpath.order() - 1)));

    // two distinct coset classes are transverse and project to a bounded set
    const std::size_t other = inst.coset_of[std::find(inst.words.begin(), inst.words.end(), "b") - inst.words.begin()];
    const DomainClass& cb = cs[class_of(p, Simplex{inst.coset_apex[other]})];
    CHECK(relation(p, ce, cb) == Relation::Transverse);
    const RhoSet rho = rho_set(p, cb, ce);
    CHECK_FALSE(rho.source_empty);
    CHECK(rho.diameter.is_finite());
    CHECK_THROWS_AS(rho_set(p, ce, ce), InvalidInput);

    // nested: ρ map from [∅] to a coset class
    REQUIRE(relation(p, ce, top) == Relation::NestedIn);
    const VertexId far = static_cast<VertexId>(inst.words.size() - 1);
    const VertexSet img = rho_map(p, top, ce, far);
    CHECK_FALSE(img.empty());
    CHECK(sets::includes(ce.link_set, img));
    CHECK(rho_map(p, top, ce, inst.coset_apex[e_coset]).empty());
    CHECK_THROWS_AS(rho_map(p, ce, top, far), InvalidInput);

    const CoordinateDistance cd = coordinate_distance(p, ce, 0, 0);
    CHECK(cd.min == Distance(0));
}

TEST_CASE("projections of W-adjacent maximal simplices stay close") {
    for (std::uint32_t r : {2u, 3u}) {
        const RelHypInstance inst = gen_relhyp(r);
        const XWPair& p = inst.xw;
        std::uint32_t worst = 0;
        for (const auto& c : domain_classes(p))
            for (const auto& [a, b] : p.wedges()) {
                const CoordinateDistance cd = coordinate_distance(p, c, a, b);
                REQUIRE(cd.min.is_finite());
                worst = std::max(worst, cd.min.hops());
            }
        CHECK(worst <= 2);
    }
}

TEST_CASE("axioms on the relhyp toy") {
    for (std::uint32_t r : {2u, 3u}) {
        const RelHypInstance inst = gen_relhyp(r);
        const AxiomReport abs = check_axioms(inst.xw);
        CHECK(abs.complexity_n == 3);
        CHECK(abs.axiom5_ok);
        CHECK(abs.ok());
        AxiomOptions rel;
        rel.relative = true;
        const AxiomReport rr = check_axioms(inst.xw, rel);
        CHECK(rr.complexity_n == 3);
        std::size_t cones = 0;
        for (std::size_t i = 0; i < rr.cone_type.size(); ++i)
            if (rr.cone_type[i]) {
                ++cones;
                CHECK_FALSE(rr.per_domain_delta[i].has_value());
            }
        CHECK(cones == inst.cosets.size());
    }
    AxiomOptions rel;
    rel.relative = true;
    CHECK_THROWS_AS(check_axioms(XWPair(gen_family(FamilyKind::Cycle, 5), {}), rel), InvalidInput);
}

TEST_CASE("axiom verdicts respond to claims and size guards") {
    const RelHypInstance inst = gen_relhyp(2);
    AxiomOptions low;
    low.complexity_claim = 2;
    const AxiomReport r = check_axioms(inst.xw, low);
    CHECK(r.axioms[0].verdict == Verdict::Fail);
    CHECK_FALSE(r.ok());

    const Graph c6 = gen_family(FamilyKind::Cycle, 6);
    AxiomOptions tight;
    tight.delta_claim = 0.5;
    const AxiomReport c = check_axioms(XWPair(c6, {}), tight);
    CHECK(c.axioms[1].verdict == Verdict::Fail);  // C of [∅] is C6 with four-point constant 1

    AxiomOptions guard;
    guard.max_classes = 2;
    CHECK_THROWS_AS(check_axioms(inst.xw, guard), SizeGuardExceeded);
}

// A deleted W-edge only leaves a dangling C-edge when another W-edge still carries
// it, which needs a support vertex of degree >= 2 with at least two base points.
static XWPair redundant_blowup() {
    for (std::uint64_t seed = 0;; ++seed) {
        XWPair p = gen_random_blowup(seed, 5, 2, 1.0);
        const BlowupGraph& b = *p.blowup();
        for (VertexId v : b.support().vertices())
            if (b.support().degree(v) >= 2 && b.base_of(v).size() >= 2) return p;
    }
}

TEST_CASE("deleting a W-edge from a dense random blowup breaks the edge axiom") {
    const XWPair p = redundant_blowup();
    REQUIRE(check_axioms(p).axiom5_ok);
    const auto edges = p.wedges();
    std::size_t broken = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto fewer = edges;
        fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
        const AxiomReport r = check_axioms(p.with_wedges(fewer));
        if (r.axiom5_ok) continue;
        ++broken;
        REQUIRE(r.axiom5_witness);
        const auto& w = *r.axiom5_witness;
        // the witness edge is carried by the deleted pair of maximal simplices
        const Simplex& a = p.maxsimps()[edges[i].first];
        const Simplex& b = p.maxsimps()[edges[i].second];
        CHECK(((a.contains(w.v) && b.contains(w.w)) || (a.contains(w.w) && b.contains(w.v))));
        CHECK(sets::includes(a.vertices(), w.delta.vertices()));
        CHECK(r.axioms[4].verdict == Verdict::Fail);
    }
    CHECK(broken > 0);
}
