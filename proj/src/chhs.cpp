#include "cuspedkit/chhs.hpp"

#include "cuspedkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace cuspedkit {

struct XWPair::Data {
    Graph x;
    std::optional<BlowupGraph> blowup;
    std::vector<Simplex> maxsimps;
    Graph w;
    Graph augmented;
    std::map<VertexSet, std::size_t> maxsimp_index;
    std::unordered_map<VertexId, std::vector<std::size_t>> containing;

    std::once_flag classes_once;
    std::vector<DomainClass> classes;
    std::map<VertexSet, std::size_t> class_index;
};

namespace {

void finish(XWPair::Data& d, const std::vector<WEdge>& wedges) {
    const std::size_t k = d.maxsimps.size();
    for (std::size_t i = 0; i < k; ++i) {
        d.maxsimp_index.emplace(d.maxsimps[i].vertices(), i);
        for (VertexId v : d.maxsimps[i].vertices()) d.containing[v].push_back(i);
    }

    GraphBuilder wb;
    for (std::size_t i = 0; i < k; ++i) wb.add_vertex(static_cast<VertexId>(i));
    for (const auto& [a, b] : wedges) {
        if (a >= k || b >= k) throw InvalidInput("W-edge " + std::to_string(a) + " " + std::to_string(b) + " out of range");
        wb.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b));
    }
    d.w = std::move(wb).build();

    GraphBuilder ab;
    for (VertexId v : d.x.vertices()) ab.add_vertex(v, d.x.label(v));
    for (const auto& [a, b] : d.x.edges()) ab.add_edge(a, b);
    for (const auto& [i, j] : d.w.edges())
        for (VertexId a : d.maxsimps[i].vertices())
            for (VertexId b : d.maxsimps[j].vertices())
                if (a != b) ab.add_edge_if_absent(a, b);
    d.augmented = std::move(ab).build();
}

constexpr std::size_t kSimplexLimit = 2'000'000;

void record_class(std::map<VertexSet, DomainClass>& by_link, VertexSet lk, VertexSet rep, const VertexSet& verts) {
    auto [it, inserted] = by_link.try_emplace(lk);
    DomainClass& c = it->second;
    if (inserted) {
        c.link_set = std::move(lk);
        c.representative = Simplex(std::move(rep));
        c.saturation = verts;
        return;
    }
    c.saturation = sets::unite(c.saturation, verts);
    if (rep < c.representative.vertices()) c.representative = Simplex(std::move(rep));
}

// Simplices of a blowup are determined, up to the choice of base points, by a
// support simplex and one of three shapes per support vertex.
enum Shape { kApex = 0, kBase = 1, kEdge = 2 };

template <class Visit>
void for_each_shape(const BlowupGraph& b, Visit visit) {
    const Graph& sup = b.support();
    for_each_simplex(
        sup,
        [&](const VertexSet& sbar) {
            VertexSet pre;
            for (VertexId w : common_link(sup, sbar)) pre = sets::unite(pre, b.cone(w));
            std::vector<int> shape(sbar.size(), kApex);
            while (true) {
                bool feasible = true;
                for (std::size_t i = 0; i < sbar.size(); ++i)
                    if (shape[i] != kApex && b.base_of(sbar[i]).empty()) feasible = false;
                if (feasible) {
                    VertexSet lk = pre;
                    for (std::size_t i = 0; i < sbar.size(); ++i) {
                        if (shape[i] == kApex) lk = sets::unite(lk, b.base_of(sbar[i]));
                        else if (shape[i] == kBase) lk = sets::unite(lk, VertexSet{sbar[i]});
                    }
                    visit(sbar, shape, lk);
                }
                std::size_t i = 0;
                while (i < shape.size() && shape[i] == kEdge) shape[i++] = kApex;
                if (i == shape.size()) break;
                ++shape[i];
            }
        },
        kSimplexLimit);
}

std::vector<DomainClass> compute_classes(const XWPair::Data& d) {
    std::map<VertexSet, DomainClass> by_link;
    if (d.blowup) {
        const BlowupGraph& b = *d.blowup;
        for_each_shape(b, [&](const VertexSet& sbar, const std::vector<int>& shape, VertexSet& lk) {
            if (lk.empty()) return;
            VertexSet rep, verts;
            for (std::size_t i = 0; i < sbar.size(); ++i) {
                const VertexId v = sbar[i];
                const VertexSet& base = b.base_of(v);
                if (shape[i] != kBase) rep.push_back(v);
                if (shape[i] != kApex) rep.push_back(base.front());
                if (shape[i] == kApex) verts = sets::unite(verts, VertexSet{v});
                else if (shape[i] == kBase) verts = sets::unite(verts, base);
                else verts = sets::unite(verts, b.cone(v));
            }
            std::sort(rep.begin(), rep.end());
            record_class(by_link, std::move(lk), std::move(rep), verts);
        });
    } else {
        for_each_simplex(
            d.x,
            [&](const VertexSet& s) {
                VertexSet lk = common_link(d.x, s);
                if (!lk.empty()) record_class(by_link, std::move(lk), s, s);
            },
            kSimplexLimit);
    }
    std::vector<DomainClass> out;
    out.reserve(by_link.size());
    for (auto& [_, c] : by_link) out.push_back(std::move(c));
    return out;
}

}  // namespace

XWPair::XWPair() : d_(std::make_shared<Data>()) {}

XWPair::XWPair(Graph x, const std::vector<WEdge>& wedges) : d_(std::make_shared<Data>()) {
    d_->maxsimps = maximal_simplices(x);
    d_->x = std::move(x);
    finish(*d_, wedges);
}

XWPair::XWPair(BlowupGraph x, const std::vector<WEdge>& wedges) : d_(std::make_shared<Data>()) {
    d_->maxsimps = maximal_simplices(x.graph());
    d_->x = x.graph();
    d_->blowup = std::move(x);
    finish(*d_, wedges);
}

XWPair XWPair::from_parts(Graph x, std::optional<BlowupGraph> blowup, std::vector<Simplex> maxsimps,
                          const std::vector<WEdge>& wedges) {
    auto d = std::make_shared<Data>();
    d->x = std::move(x);
    d->blowup = std::move(blowup);
    d->maxsimps = std::move(maxsimps);
    finish(*d, wedges);
    return XWPair(std::move(d));
}

const Graph& XWPair::x() const { return d_->x; }
const BlowupGraph* XWPair::blowup() const { return d_->blowup ? &*d_->blowup : nullptr; }
const std::vector<Simplex>& XWPair::maxsimps() const { return d_->maxsimps; }
const Graph& XWPair::w() const { return d_->w; }
const Graph& XWPair::augmented() const { return d_->augmented; }

std::vector<WEdge> XWPair::wedges() const {
    std::vector<WEdge> out;
    for (const auto& [a, b] : d_->w.edges()) out.emplace_back(a, b);
    return out;
}

std::optional<std::size_t> XWPair::find_maxsimp(const Simplex& s) const {
    auto it = d_->maxsimp_index.find(s.vertices());
    if (it == d_->maxsimp_index.end()) return std::nullopt;
    return it->second;
}

const std::vector<std::size_t>& XWPair::maxsimps_containing(VertexId v) const {
    static const std::vector<std::size_t> kNone;
    auto it = d_->containing.find(v);
    return it == d_->containing.end() ? kNone : it->second;
}

XWPair XWPair::with_wedges(const std::vector<WEdge>& wedges) const {
    return from_parts(d_->x, d_->blowup, d_->maxsimps, wedges);
}

// ---------------------------------------------------------------- classes

const std::vector<DomainClass>& domain_classes(const XWPair& p) {
    auto& d = const_cast<XWPair::Data&>(p.data());
    std::call_once(d.classes_once, [&] {
        d.classes = compute_classes(d);
        for (std::size_t i = 0; i < d.classes.size(); ++i) d.class_index.emplace(d.classes[i].link_set, i);
    });
    return d.classes;
}

std::optional<std::size_t> class_with_link(const XWPair& p, const VertexSet& link_set) {
    domain_classes(p);
    const auto& idx = p.data().class_index;
    auto it = idx.find(link_set);
    if (it == idx.end()) return std::nullopt;
    return it->second;
}

std::size_t class_of(const XWPair& p, const Simplex& s) {
    const VertexSet lk = link(p.x(), s);
    if (lk.empty()) throw InvalidInput("maximal simplex " + sets::to_string(s.vertices()) + " has no domain class");
    auto i = class_with_link(p, lk);
    if (!i) throw LemmaViolation("simplex " + sets::to_string(s.vertices()) + " missing from the class list");
    return *i;
}

std::vector<Simplex> members(const XWPair& p, const DomainClass& c) {
    std::vector<Simplex> out;
    if (const BlowupGraph* b = p.blowup()) {
        for_each_shape(*b, [&](const VertexSet& sbar, const std::vector<int>& shape, const VertexSet& lk) {
            if (lk != c.link_set) return;
            std::vector<VertexSet> partial{VertexSet{}};
            for (std::size_t i = 0; i < sbar.size(); ++i) {
                const VertexId v = sbar[i];
                std::vector<VertexSet> next;
                for (const VertexSet& s : partial) {
                    if (shape[i] == kApex) {
                        next.push_back(sets::unite(s, {v}));
                        continue;
                    }
                    for (VertexId q : b->base_of(v))
                        next.push_back(shape[i] == kBase ? sets::unite(s, {q}) : sets::unite(s, sets::make({v, q})));
                }
                partial = std::move(next);
            }
            for (auto& s : partial) out.emplace_back(std::move(s));
        });
    } else {
        for_each_simplex(
            p.x(),
            [&](const VertexSet& s) {
                if (common_link(p.x(), s) == c.link_set) out.emplace_back(s);
            },
            kSimplexLimit);
    }
    std::sort(out.begin(), out.end());
    return out;
}

VertexSet saturation(const XWPair& p, const Simplex& s) {
    require_simplex(p.x(), s);
    return domain_classes(p)[class_of(p, s)].saturation;
}

std::uint32_t complexity(const XWPair& p) {
    const auto& classes = domain_classes(p);
    // classes are sorted by link_set, not size; order by size for the DP
    std::vector<std::size_t> order(classes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return classes[a].link_set.size() < classes[b].link_set.size();
    });
    // chain length ending at each link; the empty link of a maximal simplex starts every chain
    std::vector<std::uint32_t> len(classes.size(), 2);
    std::uint32_t best = 1;
    for (std::size_t a = 0; a < order.size(); ++a) {
        const VertexSet& la = classes[order[a]].link_set;
        for (std::size_t b = 0; b < a; ++b) {
            const VertexSet& lb = classes[order[b]].link_set;
            if (lb.size() < la.size() && sets::includes(la, lb)) len[a] = std::max(len[a], len[b] + 1);
        }
        best = std::max(best, len[a]);
    }
    return best;
}

// ---------------------------------------------------------------- geometry

DomainGeometry geometry(const XWPair& p, const DomainClass& c) {
    DomainGeometry g;
    g.y = induced(p.augmented(), sets::subtract(p.augmented().vertex_set(), c.saturation));
    g.c = induced(g.y, c.link_set);
    return g;
}

Graph augmented_graph(const XWPair& p) { return p.augmented(); }
Graph y_graph(const XWPair& p, const DomainClass& c) { return geometry(p, c).y; }
Graph augmented_link(const XWPair& p, const DomainClass& c) { return geometry(p, c).c; }

const char* to_string(Relation r) {
    switch (r) {
        case Relation::Equal: return "equal";
        case Relation::NestedIn: return "nested";
        case Relation::Contains: return "contains";
        case Relation::Orthogonal: return "orthogonal";
        case Relation::Transverse: return "transverse";
    }
    return "?";
}

Relation relation(const XWPair& p, const DomainClass& c1, const DomainClass& c2) {
    const VertexSet& l1 = c1.link_set;
    const VertexSet& l2 = c2.link_set;
    if (l1 == l2) return Relation::Equal;
    if (sets::includes(l2, l1)) return Relation::NestedIn;
    if (sets::includes(l1, l2)) return Relation::Contains;
    const bool forward = sets::includes(common_link(p.x(), l1), l2);
    const bool backward = sets::includes(common_link(p.x(), l2), l1);
    if (forward != backward) throw LemmaViolation("orthogonality is not symmetric");
    return forward ? Relation::Orthogonal : Relation::Transverse;
}

VertexSet closest_points(const DomainGeometry& g, const VertexSet& sources) {
    std::vector<std::size_t> targets;
    for (VertexId v : g.c.vertices()) targets.push_back(g.y.require_index(v));
    VertexSet out;
    std::vector<std::int32_t> dist;
    std::vector<std::uint32_t> queue;
    for (VertexId s : sources) {
        bfs_indices(g.y, g.y.require_index(s), dist, queue);
        std::int32_t nearest = -1;
        for (std::size_t t : targets)
            if (dist[t] >= 0 && (nearest < 0 || dist[t] < nearest)) nearest = dist[t];
        if (nearest < 0) continue;
        for (std::size_t t : targets)
            if (dist[t] >= 0 && dist[t] <= nearest + 1) out.push_back(g.y.id_at(t));
    }
    return sets::make(std::move(out));
}

VertexSet project_pi(const XWPair& p, const DomainGeometry& g, std::size_t w) {
    if (w >= p.maxsimps().size()) throw InvalidInput("maximal simplex index out of range");
    VertexSet sources;
    for (VertexId v : p.maxsimps()[w].vertices())
        if (g.y.contains(v)) sources.push_back(v);
    if (sources.empty())
        throw LemmaViolation("maximal simplex " + sets::to_string(p.maxsimps()[w].vertices()) + " misses Y");
    return closest_points(g, sources);
}

VertexSet project_pi(const XWPair& p, const DomainClass& c, std::size_t w) {
    return project_pi(p, geometry(p, c), w);
}

namespace {

Distance set_diameter(const Graph& g, const VertexSet& s) {
    std::uint32_t best = 0;
    std::vector<std::int32_t> dist;
    std::vector<std::uint32_t> queue;
    for (VertexId a : s) {
        bfs_indices(g, g.require_index(a), dist, queue);
        for (VertexId b : s) {
            const std::int32_t d = dist[g.require_index(b)];
            if (d < 0) return Distance::infinity();
            best = std::max(best, static_cast<std::uint32_t>(d));
        }
    }
    return Distance(best);
}

}  // namespace

RhoSet rho_set(const XWPair& p, const DomainClass& from, const DomainClass& to) {
    const Relation r = relation(p, from, to);
    if (r != Relation::Transverse && r != Relation::NestedIn)
        throw InvalidInput(std::string("rho_set needs transverse or properly nested classes, got ") + to_string(r));
    const DomainGeometry g = geometry(p, to);
    VertexSet sources;
    for (VertexId v : from.saturation)
        if (g.y.contains(v)) sources.push_back(v);
    RhoSet out;
    out.source_empty = sources.empty();
    out.points = closest_points(g, sources);
    out.diameter = set_diameter(g.c, out.points);
    return out;
}

VertexSet rho_map(const XWPair& p, const DomainClass& big, const DomainClass& small, VertexId v) {
    if (relation(p, small, big) != Relation::NestedIn) throw InvalidInput("rho_map needs small properly nested in big");
    if (!sets::contains(big.link_set, v)) throw InvalidInput("rho_map: vertex outside C(big)");
    const DomainGeometry g = geometry(p, small);
    if (!g.y.contains(v)) return {};
    return closest_points(g, {v});
}

CoordinateDistance coordinate_distance(const XWPair& p, const DomainClass& c, std::size_t w1, std::size_t w2) {
    const DomainGeometry g = geometry(p, c);
    const VertexSet a = project_pi(p, g, w1);
    const VertexSet b = project_pi(p, g, w2);
    CoordinateDistance out;
    out.min = Distance::infinity();
    std::vector<std::int32_t> dist;
    std::vector<std::uint32_t> queue;
    for (VertexId x : a) {
        bfs_indices(g.c, g.c.require_index(x), dist, queue);
        for (VertexId y : b) {
            const std::int32_t d = dist[g.c.require_index(y)];
            if (d >= 0) out.min = std::min(out.min, Distance(static_cast<std::uint32_t>(d)));
        }
    }
    out.diam_first = set_diameter(g.c, a);
    out.diam_second = set_diameter(g.c, b);
    return out;
}

// ---------------------------------------------------------------- axioms

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Vacuous: return "PASS";
        case Verdict::NotApplicable: return "N/A";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

bool AxiomReport::ok() const {
    return std::none_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.verdict == Verdict::Fail; });
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

struct Bits {
    std::size_t words = 0;
    std::vector<std::uint64_t> data;

    std::uint64_t* row(std::size_t i) { return &data[i * words]; }
    const std::uint64_t* row(std::size_t i) const { return &data[i * words]; }
};

template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (unsigned j = 0; j < jobs; ++j) {
        workers.emplace_back([&, j] {
            try {
                for (std::size_t i = j; i < count; i += jobs) fn(i);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

AxiomReport check_axioms(const XWPair& p, const AxiomOptions& opts) {
    if (opts.relative && !p.blowup()) throw InvalidInput("relative mode needs X to be a blowup");
    const auto& classes = domain_classes(p);
    const std::size_t k = classes.size();
    if (k > opts.max_classes)
        throw SizeGuardExceeded(std::to_string(k) + " domain classes exceed the limit of " +
                                std::to_string(opts.max_classes));
    for (const auto& c : classes)
        if (c.link_set.size() > opts.max_link_vertices)
            throw SizeGuardExceeded("augmented link with " + std::to_string(c.link_set.size()) +
                                    " vertices exceeds the limit of " + std::to_string(opts.max_link_vertices));

    AxiomReport rep;
    rep.complexity_n = complexity(p);
    rep.cone_type.assign(k, false);
    if (opts.relative) {
        const BlowupGraph& b = *p.blowup();
        for (std::size_t i = 0; i < k; ++i) {
            const VertexId first = classes[i].link_set.front();
            rep.cone_type[i] = !b.is_apex(first) && b.base_of(b.apex_of(first)) == classes[i].link_set;
        }
    }

    std::vector<DomainGeometry> geo(k);
    std::vector<Distance> diam(k);
    rep.per_domain_delta.assign(k, std::nullopt);
    rep.per_domain_distortion.assign(k, DistortionReport{});
    parallel_for(k, opts.jobs, [&](std::size_t i) {
        geo[i] = geometry(p, classes[i]);
        diam[i] = diameter(geo[i].c);
        if (!rep.cone_type[i]) rep.per_domain_delta[i] = four_point_delta(geo[i].c);
        rep.per_domain_distortion[i] = distortion(geo[i].y, geo[i].c);
    });

    // (1)
    {
        AxiomResult& a = rep.axioms[0];
        a.detail = "n=" + std::to_string(rep.complexity_n);
        if (opts.complexity_claim && rep.complexity_n > *opts.complexity_claim) a.verdict = Verdict::Fail;
    }

    double delta = 1.0;
    if (opts.delta_claim) {
        delta = *opts.delta_claim;
    } else {
        for (std::size_t i = 0; i < k; ++i) {
            if (rep.per_domain_delta[i]) delta = std::max(delta, rep.per_domain_delta[i]->delta());
            if (rep.per_domain_distortion[i].finite()) delta = std::max(delta, rep.per_domain_distortion[i].mult());
        }
    }
    rep.delta = delta;

    // (2)
    {
        AxiomResult& a = rep.axioms[1];
        std::uint32_t worst = 0;
        std::size_t exempt = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (!rep.per_domain_delta[i]) {
                ++exempt;
                continue;
            }
            const auto& d = *rep.per_domain_delta[i];
            worst = std::max(worst, d.twice_delta);
            if (a.verdict == Verdict::Pass && d.delta() > delta) {
                a.verdict = Verdict::Fail;
                a.detail = "class " + sets::to_string(classes[i].representative.vertices()) + " delta " +
                           format_half(d.twice_delta);
                if (d.witness)
                    a.detail += " quadruple " + sets::to_string(VertexSet(d.witness->begin(), d.witness->end()));
            }
        }
        if (a.verdict == Verdict::Pass) {
            a.detail = "delta " + format_half(worst);
            if (exempt) a.detail += " exempt " + std::to_string(exempt);
        }
    }

    // (3)
    {
        AxiomResult& a = rep.axioms[2];
        const double claim = std::max(delta, 1.0);
        double worst = 1.0;
        for (std::size_t i = 0; i < k; ++i) {
            const auto& d = rep.per_domain_distortion[i];
            if (d.finite()) worst = std::max(worst, d.mult());
            if (a.verdict == Verdict::Pass && (!d.finite() || d.mult() > claim)) {
                a.verdict = Verdict::Fail;
                a.detail = "class " + sets::to_string(classes[i].representative.vertices()) + " distortion " +
                           d.to_string();
                if (d.witness)
                    a.detail += " pair " + std::to_string(d.witness->first) + " " + std::to_string(d.witness->second);
            }
        }
        if (a.verdict == Verdict::Pass) a.detail = "K " + fmt(worst);
    }

    // (4)
    {
        const Graph& x = p.x();
        const std::size_t n = x.order();
        Bits links{std::max<std::size_t>(1, (n + 63) / 64), {}};
        links.data.assign(k * links.words, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (VertexId v : classes[i].link_set) {
                const std::size_t j = x.require_index(v);
                links.row(i)[j / 64] |= std::uint64_t{1} << (j % 64);
            }
        auto subset = [&](std::size_t a, std::size_t b) {
            for (std::size_t w = 0; w < links.words; ++w)
                if (links.row(a)[w] & ~links.row(b)[w]) return false;
            return true;
        };
        std::vector<bool> big(k);
        for (std::size_t i = 0; i < k; ++i) big[i] = !diam[i].is_finite() || diam[i].hops() >= delta;
        std::vector<std::vector<bool>> incl(k, std::vector<bool>(k));
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) incl[a][b] = subset(a, b);

        bool any = false;
        AxiomResult& res = rep.axioms[3];
        for (std::size_t di = 0; di < k && rep.axiom4_ok; ++di) {
            for (std::size_t si = 0; si < k && rep.axiom4_ok; ++si) {
                std::vector<std::uint64_t> u(links.words, 0);
                bool qualifies = false;
                for (std::size_t gi = 0; gi < k; ++gi) {
                    if (!big[gi] || !incl[gi][di] || !incl[gi][si]) continue;
                    qualifies = true;
                    for (std::size_t w = 0; w < links.words; ++w) u[w] |= links.row(gi)[w];
                }
                if (!qualifies) continue;
                any = true;
                VertexSet uset;
                for (std::size_t j = 0; j < n; ++j)
                    if ((u[j / 64] >> (j % 64)) & 1u) uset.push_back(x.id_at(j));
                const VertexSet& ls = classes[si].link_set;
                const VertexSet& ld = classes[di].link_set;
                const VertexSet room = sets::intersect(common_link(x, uset), ls);
                bool found = false;
                for (const Simplex& t : maximal_simplices(induced(x, room))) {
                    if (sets::includes(ld, sets::intersect(ls, common_link(x, t.vertices())))) {
                        found = true;
                        if (!t.empty() && !sets::includes(ld, ls)) rep.axiom4_needed_extension = true;
                        break;
                    }
                }
                if (!found) {
                    rep.axiom4_ok = false;
                    rep.axiom4_witness = Axiom4Witness{di, si};
                    res.verdict = Verdict::Fail;
                    res.detail = "delta " + sets::to_string(classes[di].representative.vertices()) + " sigma " +
                                 sets::to_string(classes[si].representative.vertices());
                }
            }
        }
        if (rep.axiom4_ok) {
            if (!any) {
                res.verdict = Verdict::Vacuous;
                res.detail = "vacuous";
            } else {
                res.detail = rep.axiom4_needed_extension ? "extension needed" : "";
            }
        }
    }

    // (5)
    {
        AxiomResult& res = rep.axioms[4];
        std::size_t checked = 0;
        for (std::size_t ci = 0; ci < k && rep.axiom5_ok; ++ci) {
            std::vector<std::pair<VertexId, VertexId>> extra;
            for (const auto& [v, w] : geo[ci].c.edges())
                if (!p.x().adjacent(v, w)) extra.emplace_back(v, w);
            if (extra.empty()) continue;
            for (const Simplex& delta_s : members(p, classes[ci])) {
                for (const auto& [v, w] : extra) {
                    ++checked;
                    bool found = false;
                    for (std::size_t si : p.maxsimps_containing(v)) {
                        const Simplex& sigma = p.maxsimps()[si];
                        if (!sets::includes(sigma.vertices(), delta_s.vertices())) continue;
                        for (VertexId ri : p.w().neighbors(static_cast<VertexId>(si))) {
                            const Simplex& rho = p.maxsimps()[ri];
                            if (rho.contains(w) && sets::includes(rho.vertices(), delta_s.vertices())) {
                                found = true;
                                break;
                            }
                        }
                        if (found) break;
                    }
                    if (!found) {
                        rep.axiom5_ok = false;
                        rep.axiom5_witness = Axiom5Witness{ci, delta_s, v, w};
                        res.verdict = Verdict::Fail;
                        res.detail = "simplex " + sets::to_string(delta_s.vertices()) + " edge " + std::to_string(v) +
                                     " " + std::to_string(w);
                        break;
                    }
                }
                if (!rep.axiom5_ok) break;
            }
        }
        if (rep.axiom5_ok) res.detail = "checked " + std::to_string(checked);
    }
    return rep;
}

}  // namespace cuspedkit
