#include "cuspedkit/cusped.hpp"

#include "cuspedkit/errors.hpp"
#include "cuspedkit/xw_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>

namespace cuspedkit {

std::size_t default_cusped_budget() {
    if (const char* env = std::getenv("CUSPEDKIT_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultCuspedBudget;
}

VertexId CuspedPair::lift(VertexId p, std::uint32_t depth) const {
    auto it = lift_.find(p);
    if (it == lift_.end()) {
        if (depth == 0 && source_.x().contains(p)) return p;
        throw InvalidInput("vertex " + std::to_string(p) + " is not a base vertex of the source");
    }
    if (depth > cap_) throw InvalidInput("depth " + std::to_string(depth) + " above the cap");
    return it->second[depth];
}

std::uint32_t CuspedPair::simplex_depth(std::size_t index) const {
    std::uint32_t d = 0;
    for (VertexId v : what_.maxsimps().at(index).vertices()) d = std::max(d, depth_of(v));
    return d;
}

namespace {

std::map<VertexId, Graph> source_cone_links(const XWPair& p) {
    const BlowupGraph& b = *p.blowup();
    std::map<VertexId, Graph> out;
    for (VertexId v : b.support().vertices()) {
        const VertexSet& base = b.base_of(v);
        if (base.empty()) continue;
        auto ci = class_with_link(p, base);
        if (!ci) throw LemmaViolation("no simplex has link L_" + std::to_string(v));
        out.emplace(v, augmented_link(p, domain_classes(p)[*ci]));
    }
    return out;
}

const BlowupGraph& require_blowup(const XWPair& p) {
    if (!p.blowup()) throw InvalidInput("the cusped construction needs X to be a blowup (cone lines)");
    return *p.blowup();
}

}  // namespace

std::uint32_t auto_cusped_cap(const XWPair& p) {
    require_blowup(p);
    std::uint32_t cap = 0;
    for (const auto& [v, g] : source_cone_links(p)) cap = std::max(cap, default_cap(g));
    return cap;
}

CuspedPair build_cusped(const XWPair& p, const CuspedOptions& opts) {
    const BlowupGraph& b = require_blowup(p);
    const Graph& x = p.x();
    const Graph& support = b.support();

    CuspedPair c;
    c.source_ = p;
    c.cone_links_ = source_cone_links(p);
    std::uint32_t needed = 0;
    for (const auto& [v, g] : c.cone_links_) needed = std::max(needed, default_cap(g));
    const std::uint32_t cap = opts.cap.value_or(needed);
    if (cap < needed && !opts.allow_shallow)
        throw InvalidInput("cap " + std::to_string(cap) + " is below the required depth " + std::to_string(needed));
    if (cap > kMaxHoroballCap) throw InvalidInput("cap above " + std::to_string(kMaxHoroballCap));
    c.cap_ = cap;

    const std::vector<Simplex> support_max = maximal_simplices(support);
    {
        unsigned __int128 total = 0;
        for (const Simplex& s : support_max) {
            unsigned __int128 prod = 1;
            for (VertexId v : s.vertices()) {
                const std::size_t n = b.base_of(v).size();
                if (n) prod *= static_cast<unsigned __int128>(n) * (cap + 1);
                if (prod > opts.budget) break;
            }
            total += prod;
            if (total > opts.budget) break;
        }
        if (total > opts.budget)
            throw SizeGuardExceeded("cusped space needs more than " + std::to_string(opts.budget) +
                                    " maximal simplices (raise --budget or CUSPEDKIT_BUDGET)");
    }

    // ids: X ids at depth 0, then fresh ids by depth, support order, base order
    VertexId next = x.order() ? x.vertices().back() + 1 : 0;
    for (VertexId v : support.vertices())
        for (VertexId q : b.base_of(v)) c.lift_[q].assign(cap + 1, q);
    for (std::uint32_t n = 1; n <= cap; ++n)
        for (VertexId v : support.vertices())
            for (VertexId q : b.base_of(v)) c.lift_[q][n] = next++;

    BlowupData hat_data;
    hat_data.support = support;
    std::map<VertexId, VertexSet> hat_ids;
    for (VertexId v : support.vertices()) {
        auto& labels = hat_data.bases[v];
        auto& ids = hat_ids[v];
        for (VertexId q : b.base_of(v)) {
            const std::string& l = x.label(q);
            const std::string stem = l.empty() ? std::to_string(q) : l;
            for (std::uint32_t n = 0; n <= cap; ++n) {
                labels.push_back(n == 0 ? l : stem + "@" + std::to_string(n));
                ids.push_back(c.lift_[q][n]);
            }
        }
    }
    BlowupGraph xhat = BlowupGraph::assemble(std::move(hat_data), hat_ids, b.tainted());
    const Graph& gh = xhat.graph();

    c.down_.resize(gh.order());
    c.depth_.assign(gh.order(), 0);
    for (std::size_t i = 0; i < gh.order(); ++i) c.down_[i] = gh.id_at(i);
    for (const auto& [q, ids] : c.lift_)
        for (std::uint32_t n = 0; n <= cap; ++n) {
            const std::size_t i = gh.require_index(ids[n]);
            c.down_[i] = q;
            c.depth_[i] = n;
        }

    // maximal simplices: one base point of every cone over a maximal support simplex
    std::vector<Simplex> maxsimps;
    for (const Simplex& s : support_max) {
        std::vector<VertexSet> partial{s.vertices()};
        for (VertexId v : s.vertices()) {
            const VertexSet& base = xhat.base_of(v);
            if (base.empty()) continue;
            std::vector<VertexSet> grown;
            grown.reserve(partial.size() * base.size());
            for (const VertexSet& t : partial)
                for (VertexId q : base) grown.push_back(sets::unite(t, {q}));
            partial = std::move(grown);
        }
        for (auto& t : partial) maxsimps.emplace_back(std::move(t));
    }
    std::sort(maxsimps.begin(), maxsimps.end());
    std::map<VertexSet, std::size_t> index;
    for (std::size_t i = 0; i < maxsimps.size(); ++i) index.emplace(maxsimps[i].vertices(), i);
    auto index_of = [&](const VertexSet& s) {
        auto it = index.find(s);
        if (it == index.end()) throw LemmaViolation("expected a maximal simplex at " + sets::to_string(s));
        return it->second;
    };

    std::set<WEdge> edges;

    // cusp-type
    std::map<VertexId, Horoball> horoballs;
    for (const auto& [v, g] : c.cone_links_) horoballs.emplace(v, build_horoball(g, cap));
    for (std::size_t i = 0; i < maxsimps.size(); ++i) {
        const VertexSet& theta = maxsimps[i].vertices();
        for (VertexId q : theta) {
            if (xhat.is_apex(q)) continue;
            const VertexId v = xhat.apex_of(q);
            const Horoball& h = horoballs.at(v);
            const std::size_t qi = gh.require_index(q);
            const VertexId hv = h.vertex_at(c.down_[qi], c.depth_[qi]);
            for (VertexId hn : h.graph().neighbors(hv)) {
                const VertexId q2 = c.lift_.at(h.origin_of(hn))[h.depth_of(hn)];
                VertexSet xi = sets::subtract(theta, {q});
                xi = sets::unite(xi, {q2});
                const std::size_t j = index_of(xi);
                if (i < j) edges.emplace(i, j);
            }
        }
    }

    // W-type: raise any set of shared base points of a W-edge to equal depths
    for (const auto& [a, bb] : p.wedges()) {
        const VertexSet& sigma = p.maxsimps()[a].vertices();
        const VertexSet& rho = p.maxsimps()[bb].vertices();
        VertexSet shared;
        for (VertexId q : sets::intersect(sigma, rho))
            if (!b.is_apex(q)) shared.push_back(q);
        std::vector<std::uint32_t> depth(shared.size(), 0);
        while (true) {
            VertexSet theta = sigma, xi = rho;
            for (std::size_t k = 0; k < shared.size(); ++k) {
                if (depth[k] == 0) continue;
                const VertexId up = c.lift_.at(shared[k])[depth[k]];
                theta = sets::unite(sets::subtract(theta, {shared[k]}), {up});
                xi = sets::unite(sets::subtract(xi, {shared[k]}), {up});
            }
            if (theta == xi) throw LemmaViolation("W-type edge would be a loop at " + sets::to_string(theta));
            const std::size_t i = index_of(theta);
            const std::size_t j = index_of(xi);
            edges.emplace(std::min(i, j), std::max(i, j));
            std::size_t k = 0;
            while (k < depth.size() && depth[k] == cap) depth[k++] = 0;
            if (k == depth.size()) break;
            ++depth[k];
        }
    }

    std::vector<WEdge> wedges(edges.begin(), edges.end());
    Graph xg = xhat.graph();
    c.what_ = XWPair::from_parts(std::move(xg), std::move(xhat), std::move(maxsimps), wedges);
    return c;
}

std::uint32_t m_inverse(std::uint64_t t) {
    std::uint32_t n = 0;
    while (n + 1 < 58 && (static_cast<std::uint64_t>(n + 1) << (n + 1)) <= t) ++n;
    return n;
}

// ---------------------------------------------------------------- checkers

namespace {

VertexSet down_set(const CuspedPair& c, const VertexSet& s) {
    std::vector<VertexId> out;
    out.reserve(s.size());
    for (VertexId v : s) out.push_back(c.down_of(v));
    return sets::make(std::move(out));
}

std::string tainted_note(const CuspedPair& c) { return c.source().blowup()->tainted() ? " tainted" : ""; }

}  // namespace

CheckResult check_links_lemma(const CuspedPair& c, std::size_t max_simplices) {
    const Graph& gh = c.what().x();
    const Graph& x = c.source().x();
    CheckResult res;
    std::size_t count = 0;
    std::vector<VertexId> downs(gh.order());
    for (std::size_t i = 0; i < gh.order(); ++i) downs[i] = c.down_of(gh.id_at(i));
    for_each_simplex(
        gh,
        [&](const VertexSet& s) {
            if (res.verdict == Verdict::Fail) return;
            ++count;
            const VertexSet hat = common_link(gh, s);
            const VertexSet low = common_link(x, down_set(c, s));
            for (std::size_t i = 0; i < gh.order(); ++i) {
                const bool a = sets::contains(hat, gh.id_at(i));
                const bool b = sets::contains(low, downs[i]);
                if (a != b) {
                    res.verdict = Verdict::Fail;
                    res.detail = "simplex " + sets::to_string(s) + " vertex " + std::to_string(gh.id_at(i));
                    return;
                }
            }
            if (down_set(c, hat) != low) {
                res.verdict = Verdict::Fail;
                res.detail = "simplex " + sets::to_string(s) + " link image differs";
            }
        },
        max_simplices);
    if (res.verdict == Verdict::Pass) res.detail = "simplices " + std::to_string(count) + tainted_note(c);
    return res;
}

CheckResult check_nesting_correspondence(const CuspedPair& c, std::size_t max_simplices) {
    const Graph& gh = c.what().x();
    const Graph& x = c.source().x();
    std::set<std::pair<VertexSet, VertexSet>> seen;
    std::map<std::pair<VertexSet, VertexSet>, VertexSet> example;
    for_each_simplex(
        gh,
        [&](const VertexSet& s) {
            auto key = std::make_pair(common_link(gh, s), common_link(x, down_set(c, s)));
            if (seen.insert(key).second) example.emplace(std::move(key), s);
        },
        max_simplices);
    std::vector<std::pair<VertexSet, VertexSet>> tuples(seen.begin(), seen.end());
    CheckResult res;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        for (std::size_t j = 0; j < tuples.size(); ++j) {
            const bool hat = sets::includes(tuples[j].first, tuples[i].first);
            const bool low = sets::includes(tuples[j].second, tuples[i].second);
            if (hat != low) {
                res.verdict = Verdict::Fail;
                res.detail = "simplices " + sets::to_string(example[tuples[i]]) + " " + sets::to_string(example[tuples[j]]);
                return res;
            }
        }
    }
    res.detail = "link pairs " + std::to_string(tuples.size()) + tainted_note(c);
    return res;
}

ConeLinkCheck check_cone_link_is_horoball(const CuspedPair& c) {
    ConeLinkCheck out;
    const BlowupGraph& xhat = c.xhat();
    for (const auto& [v, base] : c.cone_links()) {
        bool ok = true;
        auto ci = class_with_link(c.what(), xhat.base_of(v));
        if (!ci) {
            ok = false;
        } else {
            const Graph chat = augmented_link(c.what(), domain_classes(c.what())[*ci]);
            const Horoball h = build_horoball(base, c.cap());
            std::vector<std::pair<VertexId, VertexId>> mapped;
            for (const auto& [a, b] : h.graph().edges()) {
                VertexId ma = c.lift(h.origin_of(a), h.depth_of(a));
                VertexId mb = c.lift(h.origin_of(b), h.depth_of(b));
                mapped.emplace_back(std::min(ma, mb), std::max(ma, mb));
            }
            std::sort(mapped.begin(), mapped.end());
            ok = chat.order() == h.graph().order() && mapped == chat.edges();
        }
        out.per_vertex[v] = ok;
        if (!ok && out.overall.verdict == Verdict::Pass) {
            out.overall.verdict = Verdict::Fail;
            out.overall.detail = "cone " + std::to_string(v);
        }
    }
    if (out.overall.verdict == Verdict::Pass) out.overall.detail = "cones " + std::to_string(out.per_vertex.size());
    return out;
}

CheckResult check_duaug_embedding(const CuspedPair& c) {
    const Graph depth0 = induced(c.what().augmented(), c.source().x().vertex_set());
    const auto want = c.source().augmented().edges();
    const auto got = depth0.edges();
    CheckResult res;
    if (want == got) {
        res.detail = "edges " + std::to_string(want.size());
        return res;
    }
    res.verdict = Verdict::Fail;
    std::vector<std::pair<VertexId, VertexId>> diff;
    std::set_symmetric_difference(want.begin(), want.end(), got.begin(), got.end(), std::back_inserter(diff));
    res.detail = "edge " + std::to_string(diff.front().first) + " " + std::to_string(diff.front().second);
    return res;
}

CheckResult check_w_coarse_embedding(const CuspedPair& c, const std::vector<bool>* inner) {
    const XWPair& src = c.source();
    const Graph& w = src.w();
    const Graph& what = c.what().w();
    const std::size_t k = src.maxsimps().size();
    if (inner && inner->size() != k) throw InvalidInput("inner mask size does not match W");
    std::vector<std::size_t> image(k);
    for (std::size_t i = 0; i < k; ++i) {
        auto j = c.what().find_maxsimp(src.maxsimps()[i]);
        if (!j) throw LemmaViolation("source maximal simplex missing from the cusped space");
        image[i] = what.require_index(static_cast<VertexId>(*j));
    }
    // a Ŵ path reaching depth cap+1 has length at least 2(cap+1)
    const std::int64_t certain = 2 * static_cast<std::int64_t>(c.cap()) + 1;

    CheckResult res;
    std::size_t pairs = 0, inconclusive = 0;
    std::vector<std::int32_t> dw, dh;
    std::vector<std::uint32_t> queue;
    for (std::size_t i = 0; i < k; ++i) {
        if (inner && !(*inner)[i]) continue;
        bfs_indices(w, w.require_index(static_cast<VertexId>(i)), dw, queue);
        bfs_indices(what, image[i], dh, queue);
        for (std::size_t j = i + 1; j < k; ++j) {
            if (inner && !(*inner)[j]) continue;
            const std::int32_t a = dw[w.require_index(static_cast<VertexId>(j))];
            if (a < 0) continue;
            ++pairs;
            const std::int32_t h = dh[image[j]];
            const std::string where = "pair " + std::to_string(i) + " " + std::to_string(j) + " dW " +
                                      std::to_string(a) + " dWhat " + std::to_string(h);
            if (h < 0 || h > a) {
                res.verdict = Verdict::Fail;
                res.detail = where;
                return res;
            }
            const std::uint32_t m = m_inverse(static_cast<std::uint64_t>(a));
            if (static_cast<std::int64_t>(m) <= h) {
                if (h > certain && static_cast<std::int64_t>(m) > certain + 1) ++inconclusive;
                continue;
            }
            res.verdict = Verdict::Fail;
            res.detail = where;
            return res;
        }
    }
    if (inconclusive) {
        res.verdict = Verdict::Inconclusive;
        res.detail = "pairs " + std::to_string(pairs) + " uncertified " + std::to_string(inconclusive);
    } else {
        res.detail = "pairs " + std::to_string(pairs);
    }
    return res;
}

CheckResult check_depth_difference(const CuspedPair& c) {
    CheckResult res;
    const auto edges = c.what().wedges();
    for (const auto& [a, b] : edges) {
        const std::uint32_t da = c.simplex_depth(a), db = c.simplex_depth(b);
        if (std::max(da, db) - std::min(da, db) > 1) {
            res.verdict = Verdict::Fail;
            res.detail = "edge " + std::to_string(a) + " " + std::to_string(b);
            return res;
        }
    }
    res.detail = "edges " + std::to_string(edges.size());
    return res;
}

namespace {

// Smallest half-integer K >= 1 with target <= K source + K over pairs where
// source is finite, doubled; empty when some target is infinite.
std::optional<std::uint32_t> pair_constant(const std::vector<std::int32_t>& source,
                                           const std::vector<std::int32_t>& target) {
    std::uint64_t twice = 2;
    for (std::size_t i = 0; i < source.size(); ++i) {
        if (source[i] < 0) continue;
        if (target[i] < 0) return std::nullopt;
        const std::uint64_t need = (2 * static_cast<std::uint64_t>(target[i]) + source[i]) /
                                   (static_cast<std::uint64_t>(source[i]) + 1);
        twice = std::max(twice, need);
    }
    return static_cast<std::uint32_t>(twice);
}

}  // namespace

QiCheck check_blowup_type_2qi(const CuspedPair& c) {
    QiCheck out;
    const XWPair& src = c.source();
    const BlowupGraph& b = *src.blowup();
    const auto& classes = domain_classes(src);
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        std::optional<Simplex> sigma;
        for (const Simplex& s : members(src, classes[ci])) {
            if (s.empty()) continue;
            bool all_edges = true;
            for (VertexId v : support_of(b, s).vertices())
                if (sets::intersect(s.vertices(), b.cone(v)).size() != 2) all_edges = false;
            if (all_edges) {
                sigma = s;
                break;
            }
        }
        if (!sigma) continue;

        QiMeasurement m;
        m.class_index = ci;
        m.sigma = *sigma;
        const Graph low = augmented_link(src, classes[ci]);
        const Graph high = augmented_link(c.what(), domain_classes(c.what())[class_of(c.what(), *sigma)]);

        const std::size_t n = low.order();
        std::vector<std::int32_t> dl, dh, d;
        std::vector<std::uint32_t> queue;
        for (std::size_t i = 0; i < n; ++i) {
            bfs_indices(low, i, d, queue);
            for (std::size_t j = i + 1; j < n; ++j) dl.push_back(d[j]);
            bfs_indices(high, high.require_index(low.id_at(i)), d, queue);
            for (std::size_t j = i + 1; j < n; ++j) dh.push_back(d[high.require_index(low.id_at(j))]);
        }
        m.twice_forward = pair_constant(dl, dh);
        m.twice_backward = pair_constant(dh, dl);

        // density: multi-source BFS from the image of C inside Ĉ
        std::vector<std::int32_t> reach(high.order(), -1);
        std::vector<std::size_t> frontier;
        for (VertexId v : low.vertices()) {
            const std::size_t i = high.require_index(v);
            reach[i] = 0;
            frontier.push_back(i);
        }
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            const std::size_t u = frontier[head];
            for (std::uint32_t nb : high.neighbor_indices(u))
                if (reach[nb] < 0) {
                    reach[nb] = reach[u] + 1;
                    frontier.push_back(nb);
                }
        }
        m.density = Distance(0);
        for (std::int32_t r : reach) {
            if (r < 0) {
                m.density = Distance::infinity();
                break;
            }
            m.density = std::max(m.density, Distance(static_cast<std::uint32_t>(r)));
        }
        m.ok = m.twice_forward && *m.twice_forward <= 4 && m.twice_backward && *m.twice_backward <= 4 &&
               m.density <= Distance(2);
        if (!m.ok && out.overall.verdict == Verdict::Pass) {
            out.overall.verdict = Verdict::Fail;
            out.overall.detail = "class " + sets::to_string(sigma->vertices()) + " forward " +
                                 (m.twice_forward ? format_half(*m.twice_forward) : "inf") + " backward " +
                                 (m.twice_backward ? format_half(*m.twice_backward) : "inf");
        }
        out.classes.push_back(std::move(m));
    }
    if (out.classes.empty()) {
        out.overall.verdict = Verdict::NotApplicable;
        out.overall.detail = "no blowup-type classes";
    } else if (out.overall.verdict == Verdict::Pass) {
        std::uint32_t fwd = 2, bwd = 2;
        for (const auto& m : out.classes) {
            fwd = std::max(fwd, *m.twice_forward);
            bwd = std::max(bwd, *m.twice_backward);
        }
        out.overall.detail = "classes " + std::to_string(out.classes.size()) + " forward " + format_half(fwd) +
                             " backward " + format_half(bwd);
    }
    return out;
}

// ---------------------------------------------------------------- bundle format

void write_cusped_bundle(std::ostream& out, const CuspedPair& c) {
    out << "cusped " << c.cap() << '\n';
    write_xw(out, c.source());
    out << "---\n";
    write_xw(out, c.what());
}

bool is_cusped_bundle(const std::vector<Directive>& ds) { return !ds.empty() && ds.front().keyword == "cusped"; }

CuspedPair cusped_from_directives(const std::vector<Directive>& ds, std::size_t budget) {
    if (!is_cusped_bundle(ds)) throw InvalidInput("expected a 'cusped <cap>' header");
    if (ds.front().args.size() != 1) throw InvalidInput("line " + std::to_string(ds.front().line) + ": cusped needs a cap");
    const auto cap = parse_unsigned(ds.front().args[0], ds.front().line);
    if (cap > kMaxHoroballCap) throw InvalidInput("cap above " + std::to_string(kMaxHoroballCap));
    auto sep = std::find_if(ds.begin(), ds.end(), [](const Directive& d) { return d.keyword == "---"; });
    const std::vector<Directive> first(ds.begin() + 1, sep);
    CuspedOptions opts;
    opts.cap = static_cast<std::uint32_t>(cap);
    opts.budget = budget;
    CuspedPair c = build_cusped(xw_from_directives(first), opts);
    if (sep != ds.end()) {
        const XWPair given = xw_from_directives(std::vector<Directive>(sep + 1, ds.end()));
        const XWPair& built = c.what();
        if (!(given.x() == built.x()) || given.maxsimps() != built.maxsimps() || given.wedges() != built.wedges())
            throw InvalidInput("cusped section does not match the construction from its source");
    }
    return c;
}

CuspedPair read_cusped_bundle(std::istream& in, std::size_t budget) {
    return cusped_from_directives(read_directives(in), budget);
}

}  // namespace cuspedkit
