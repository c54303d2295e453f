#include "cuspedkit/blowup.hpp"

#include "cuspedkit/errors.hpp"
#include "cuspedkit/graph_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <thread>

namespace cuspedkit {

// ---------------------------------------------------------------- construction

VertexId BlowupGraph::apex_of(VertexId x) const { return apex_[graph_.require_index(x)]; }

const VertexSet& BlowupGraph::base_of(VertexId support_vertex) const {
    auto it = base_ids_.find(support_vertex);
    if (it == base_ids_.end()) throw InvalidInput("unknown support vertex " + std::to_string(support_vertex));
    return it->second;
}

VertexSet BlowupGraph::cone(VertexId support_vertex) const {
    VertexSet c = base_of(support_vertex);
    c.insert(std::upper_bound(c.begin(), c.end(), support_vertex), support_vertex);
    return c;
}

BlowupGraph BlowupGraph::assemble(BlowupData data, const std::map<VertexId, VertexSet>& base_ids,
                                  bool allow_empty_bases) {
    BlowupGraph x;
    const Graph& support = data.support;
    GraphBuilder b;
    for (VertexId v : support.vertices()) b.add_vertex(v, support.label(v));

    for (VertexId v : support.vertices()) {
        auto labels = data.bases.find(v);
        auto ids = base_ids.find(v);
        const std::size_t nl = labels == data.bases.end() ? 0 : labels->second.size();
        const std::size_t ni = ids == base_ids.end() ? 0 : ids->second.size();
        if (nl != ni) throw InvalidInput("base id count does not match label count at support vertex " + std::to_string(v));
        if (nl == 0) {
            if (!allow_empty_bases) throw InvalidInput("empty base set at support vertex " + std::to_string(v));
            x.tainted_ = true;
        }
        VertexSet sorted_ids;
        for (std::size_t i = 0; i < nl; ++i) {
            const VertexId id = ids->second[i];
            if (support.contains(id)) throw InvalidInput("base id " + std::to_string(id) + " collides with a support id");
            b.add_vertex(id, labels->second[i]);
            b.add_edge(v, id);
            sorted_ids.push_back(id);
        }
        std::sort(sorted_ids.begin(), sorted_ids.end());
        x.base_ids_[v] = std::move(sorted_ids);
    }
    for (auto& [v, _] : data.bases)
        if (!support.contains(v)) throw InvalidInput("base set for unknown support vertex " + std::to_string(v));

    for (const auto& [v, w] : support.edges()) {
        const VertexSet cv = x.cone(v);
        const VertexSet cw = x.cone(w);
        for (VertexId a : cv)
            for (VertexId c : cw) b.add_edge(a, c);
    }
    x.graph_ = std::move(b).build();
    x.apex_.resize(x.graph_.order());
    for (const auto& [v, ids] : x.base_ids_) {
        x.apex_[x.graph_.require_index(v)] = v;
        for (VertexId p : ids) x.apex_[x.graph_.require_index(p)] = v;
    }
    x.data_ = std::move(data);
    return x;
}

BlowupGraph build_blowup(const BlowupData& data, bool allow_empty_bases) {
    std::map<VertexId, VertexSet> ids;
    VertexId next = data.support.order() ? data.support.vertices().back() + 1 : 0;
    for (VertexId v : data.support.vertices()) {
        auto it = data.bases.find(v);
        VertexSet& out = ids[v];
        if (it == data.bases.end()) continue;
        for (std::size_t i = 0; i < it->second.size(); ++i) out.push_back(next++);
    }
    return BlowupGraph::assemble(data, ids, allow_empty_bases);
}

// ---------------------------------------------------------------- simplices

Simplex support_of(const BlowupGraph& x, const Simplex& s) {
    std::vector<VertexId> out;
    for (VertexId v : s.vertices()) out.push_back(x.apex_of(v));
    return Simplex(sets::make(std::move(out)));
}

LinkDecomposition decompose_link(const BlowupGraph& x, const Simplex& s) {
    require_simplex(x.graph(), s);
    const Simplex sbar = support_of(x, s);
    LinkDecomposition out;
    for (VertexId w : common_link(x.support(), sbar.vertices())) out.preimage = sets::unite(out.preimage, x.cone(w));

    for (VertexId v : sbar.vertices()) {
        const VertexSet in_cone = sets::intersect(s.vertices(), x.cone(v));
        VertexSet part;
        if (in_cone.size() == 1 && in_cone[0] == v) part = x.base_of(v);
        else if (in_cone.size() == 1) part = {v};
        out.cone_parts[v] = std::move(part);
    }

    // reassemble and compare with the directly computed link
    VertexSet joined = out.preimage;
    std::vector<const VertexSet*> pieces{&out.preimage};
    for (const auto& [v, part] : out.cone_parts) {
        joined = sets::unite(joined, part);
        pieces.push_back(&part);
    }
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j)
            if (!sets::disjoint(*pieces[i], *pieces[j]) || !is_join(x.graph(), *pieces[i], *pieces[j]))
                throw LemmaViolation("link decomposition pieces do not span a join at " + sets::to_string(s.vertices()));
    if (joined != link(x.graph(), s))
        throw LemmaViolation("link decomposition does not reassemble the link of " + sets::to_string(s.vertices()));
    return out;
}

const char* to_string(SimplexType t) {
    switch (t) {
        case SimplexType::Bounded: return "bounded";
        case SimplexType::BlowupType: return "blowup";
        case SimplexType::ConeType: return "cone";
    }
    return "?";
}

namespace {

// True when the induced subgraph on vs is a join of two non-empty parts,
// i.e. its complement graph is disconnected.
bool is_nontrivial_join(const Graph& g, const VertexSet& vs) {
    if (vs.size() < 2) return false;
    std::vector<std::size_t> idx;
    for (VertexId v : vs) idx.push_back(g.require_index(v));
    std::vector<bool> seen(idx.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t a = stack.back();
        stack.pop_back();
        for (std::size_t b = 0; b < idx.size(); ++b) {
            if (!seen[b] && !g.adjacent_indices(idx[a], idx[b])) {
                seen[b] = true;
                ++reached;
                stack.push_back(b);
            }
        }
    }
    return reached < idx.size();
}

}  // namespace

SimplexClassification classify_simplex(const BlowupGraph& x, const Simplex& s) {
    const VertexSet lk = link(x.graph(), s);
    if (lk.empty()) throw InvalidInput("classify_simplex: maximal simplex " + sets::to_string(s.vertices()));
    SimplexClassification c;

    const VertexId v0 = x.apex_of(lk.front());
    if (!x.is_apex(lk.front()) && lk == x.base_of(v0)) {
        c.cone = true;
        c.cone_vertex = v0;
    }
    c.blowup = true;
    for (VertexId v : support_of(x, s).vertices())
        if (sets::intersect(s.vertices(), x.cone(v)).size() != 2) c.blowup = false;
    c.bounded = lk.size() == 1 || is_nontrivial_join(x.graph(), lk);

    if (c.cone) c.type = SimplexType::ConeType;
    else if (c.blowup) c.type = SimplexType::BlowupType;
    else if (c.bounded) c.type = SimplexType::Bounded;
    else throw LemmaViolation("simplex " + sets::to_string(s.vertices()) + " has no type");
    return c;
}

// ---------------------------------------------------------------- cleanish

namespace {

struct BitTable {
    std::size_t words = 0;
    std::vector<std::uint64_t> data;

    std::uint64_t* row(std::size_t i) { return &data[i * words]; }
    const std::uint64_t* row(std::size_t i) const { return &data[i * words]; }
};

}  // namespace

CleanishReport has_cleanish(const Graph& g, const CleanishOptions& opts) {
    const std::size_t n = g.order();
    const std::size_t words = std::max<std::size_t>(1, (n + 63) / 64);

    std::vector<VertexSet> simplices;
    for_each_simplex(g, [&](const VertexSet& s) { simplices.push_back(s); }, opts.max_simplices);
    const std::size_t count = simplices.size();

    BitTable nbr{words, std::vector<std::uint64_t>(n * words, 0)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t j : g.neighbor_indices(i)) nbr.row(i)[j / 64] |= std::uint64_t{1} << (j % 64);

    BitTable members{words, std::vector<std::uint64_t>(count * words, 0)};
    BitTable links{words, std::vector<std::uint64_t>(count * words, 0)};
    for (std::size_t s = 0; s < count; ++s) {
        std::uint64_t* m = members.row(s);
        std::uint64_t* l = links.row(s);
        for (std::size_t w = 0; w < words; ++w) l[w] = ~std::uint64_t{0};
        if (n % 64) l[words - 1] = (std::uint64_t{1} << (n % 64)) - 1;
        if (n == 0) l[0] = 0;
        for (VertexId v : simplices[s]) {
            const std::size_t i = g.require_index(v);
            m[i / 64] |= std::uint64_t{1} << (i % 64);
            for (std::size_t w = 0; w < words; ++w) l[w] &= nbr.row(i)[w];
        }
    }

    // supersets[s] = simplices containing s
    std::vector<std::vector<std::uint32_t>> supersets(count);
    for (std::size_t s = 0; s < count; ++s) {
        for (std::size_t t = 0; t < count; ++t) {
            if (simplices[t].size() < simplices[s].size()) continue;
            bool sub = true;
            for (std::size_t w = 0; w < words && sub; ++w)
                sub = (members.row(s)[w] & ~members.row(t)[w]) == 0;
            if (sub) supersets[s].push_back(static_cast<std::uint32_t>(t));
        }
    }

    struct Partial {
        std::optional<std::pair<std::size_t, std::size_t>> bad;
        std::size_t proper = 0;
        std::vector<CleanishWitness> witnesses;
    };

    auto solve = [&](std::size_t first, std::size_t stride) {
        Partial part;
        std::vector<std::uint64_t> inter(words), psi(words);
        for (std::size_t s = first; s < count && !part.bad; s += stride) {
            for (std::size_t f = 0; f < count; ++f) {
                for (std::size_t w = 0; w < words; ++w) inter[w] = links.row(s)[w] & links.row(f)[w];
                bool found = false;
                for (std::uint32_t p : supersets[s]) {
                    const std::uint64_t* lp = links.row(p);
                    bool inside = true;
                    for (std::size_t w = 0; w < words && inside; ++w) inside = (lp[w] & ~inter[w]) == 0;
                    if (!inside) continue;
                    for (std::size_t w = 0; w < words; ++w) psi[w] = inter[w] & ~lp[w];
                    // Ψ must be a clique joined to Lk(Π): each u in Ψ sees all of inter \ {u}.
                    bool ok = true;
                    for (std::size_t w = 0; w < words && ok; ++w) {
                        std::uint64_t bits = psi[w];
                        while (bits && ok) {
                            const std::size_t u = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
                            bits &= bits - 1;
                            for (std::size_t k = 0; k < words && ok; ++k) {
                                std::uint64_t need = inter[k];
                                if (k == u / 64) need &= ~(std::uint64_t{1} << (u % 64));
                                ok = (need & ~nbr.row(u)[k]) == 0;
                            }
                        }
                    }
                    if (!ok) continue;
                    found = true;
                    if (p != s) ++part.proper;
                    if (opts.record_witnesses) {
                        VertexSet psi_ids;
                        for (std::size_t i = 0; i < n; ++i)
                            if ((psi[i / 64] >> (i % 64)) & 1u) psi_ids.push_back(g.id_at(i));
                        part.witnesses.push_back({Simplex(simplices[s]), Simplex(simplices[f]), Simplex(simplices[p]),
                                                  Simplex(psi_ids)});
                    }
                    break;
                }
                if (!found) {
                    part.bad = std::make_pair(s, f);
                    break;
                }
            }
        }
        return part;
    };

    const unsigned jobs = std::max(1u, opts.jobs);
    std::vector<Partial> parts(jobs);
    if (jobs == 1) {
        parts[0] = solve(0, 1);
    } else {
        std::vector<std::thread> workers;
        for (unsigned j = 0; j < jobs; ++j) workers.emplace_back([&, j] { parts[j] = solve(j, jobs); });
        for (auto& t : workers) t.join();
    }

    CleanishReport rep;
    rep.simplices = count;
    rep.pairs = count * count;
    std::optional<std::pair<std::size_t, std::size_t>> first_bad;
    for (auto& p : parts) {
        rep.proper_extensions += p.proper;
        if (p.bad && (!first_bad || *p.bad < *first_bad)) first_bad = p.bad;
        for (auto& w : p.witnesses) rep.witnesses.push_back(std::move(w));
    }
    if (first_bad) {
        rep.ok = false;
        rep.counterexample = std::make_pair(Simplex(simplices[first_bad->first]), Simplex(simplices[first_bad->second]));
    }
    return rep;
}

// ---------------------------------------------------------------- text format

BlowupData read_blowup_data(std::istream& in) {
    std::vector<Directive> rest;
    BlowupData d;
    d.support = graph_from_directives(read_directives(in), &rest);
    for (const auto& dir : rest) {
        if (dir.keyword != "base")
            throw InvalidInput("line " + std::to_string(dir.line) + ": unknown directive '" + dir.keyword + "'");
        if (dir.args.empty()) throw InvalidInput("line " + std::to_string(dir.line) + ": base needs a support id");
        const VertexId v = parse_vertex_id(dir.args[0], dir.line);
        if (!d.support.contains(v))
            throw InvalidInput("line " + std::to_string(dir.line) + ": base for unknown support vertex");
        auto& labels = d.bases[v];
        if (!labels.empty()) throw InvalidInput("line " + std::to_string(dir.line) + ": repeated base line");
        labels.assign(dir.args.begin() + 1, dir.args.end());
        std::vector<std::string> check = labels;
        std::sort(check.begin(), check.end());
        if (std::adjacent_find(check.begin(), check.end()) != check.end())
            throw InvalidInput("line " + std::to_string(dir.line) + ": repeated base label");
    }
    return d;
}

void write_blowup_data(std::ostream& out, const BlowupData& d) {
    write_graph(out, d.support);
    for (const auto& [v, labels] : d.bases) {
        out << "base " << v;
        for (const auto& l : labels) out << ' ' << l;
        out << '\n';
    }
}

}  // namespace cuspedkit
