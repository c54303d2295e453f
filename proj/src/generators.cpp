#include "cuspedkit/generators.hpp"

#include "cuspedkit/errors.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace cuspedkit {

namespace {

constexpr char kLetters[4] = {'a', 'A', 'b', 'B'};

char inverse(char c) {
    switch (c) {
        case 'a': return 'A';
        case 'A': return 'a';
        case 'b': return 'B';
        default: return 'b';
    }
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<bool> RelHypInstance::inner_mask() const {
    std::vector<bool> mask(xw.maxsimps().size(), false);
    for (std::size_t i = 0; i < mask.size(); ++i)
        for (VertexId v : xw.maxsimps()[i].vertices())
            if (v < words.size()) mask[i] = sets::contains(inner, v);
    return mask;
}

RelHypInstance gen_relhyp(std::uint32_t radius, std::uint32_t margin) {
    if (radius < 2) throw InvalidInput("relhyp radius must be at least 2");
    if (margin < 1 || margin >= radius) throw InvalidInput("relhyp margin must satisfy 1 <= margin < radius");
    RelHypInstance inst;
    inst.radius = radius;
    inst.margin = margin;

    // shortlex enumeration: extend each word of length L by every letter that does not cancel
    std::vector<std::string> layer{""};
    inst.words.push_back("");
    for (std::uint32_t len = 1; len <= radius; ++len) {
        std::vector<std::string> next;
        for (const auto& w : layer)
            for (char c : kLetters)
                if (w.empty() || w.back() != inverse(c)) next.push_back(w + c);
        auto rank = [](const std::string& s) {
            std::string r;
            for (char c : s) r.push_back(static_cast<char>(std::string_view("aAbB").find(c)));
            return r;
        };
        std::sort(next.begin(), next.end(), [&](const auto& x, const auto& y) { return rank(x) < rank(y); });
        for (const auto& w : next) inst.words.push_back(w);
        layer = std::move(next);
    }
    const std::size_t n = inst.words.size();
    std::map<std::string, VertexId> id;
    for (std::size_t i = 0; i < n; ++i) id.emplace(inst.words[i], static_cast<VertexId>(i));

    GraphBuilder bb;
    for (std::size_t i = 0; i < n; ++i) bb.add_vertex(static_cast<VertexId>(i), inst.words[i].empty() ? "e" : inst.words[i]);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& w = inst.words[i];
        for (char c : kLetters) {
            std::string ws = (!w.empty() && w.back() == inverse(c)) ? w.substr(0, w.size() - 1) : w + c;
            auto it = id.find(ws);
            if (it != id.end()) bb.add_edge_if_absent(static_cast<VertexId>(i), it->second);
        }
    }
    inst.ball = std::move(bb).build();

    // cosets g<a>: strip trailing a / A to find the representative
    std::map<std::string, std::vector<std::pair<int, VertexId>>> traces;
    std::vector<std::string> reps;
    inst.exponent.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& w = inst.words[i];
        std::size_t cut = w.size();
        while (cut > 0 && (w[cut - 1] == 'a' || w[cut - 1] == 'A')) --cut;
        const std::string rep = w.substr(0, cut);
        int k = static_cast<int>(w.size() - cut);
        if (k > 0 && w.back() == 'A') k = -k;
        inst.exponent[i] = k;
        auto [it, fresh] = traces.try_emplace(rep);
        if (fresh) reps.push_back(rep);
        it->second.emplace_back(k, static_cast<VertexId>(i));
    }
    // reps are already in shortlex order since the representative precedes its coset
    inst.coset_of.assign(n, 0);
    GraphBuilder sb;
    BlowupData data;
    std::map<VertexId, VertexSet> base_ids;
    for (std::size_t c = 0; c < reps.size(); ++c) {
        auto& trace = traces[reps[c]];
        std::sort(trace.begin(), trace.end());
        VertexSet ids;
        std::vector<std::string> labels;
        for (const auto& [k, v] : trace) {
            ids.push_back(v);
            labels.push_back(inst.ball.label(v));
            inst.coset_of[v] = c;
        }
        const VertexId apex = static_cast<VertexId>(n + c);
        sb.add_vertex(apex, (reps[c].empty() ? "e" : reps[c]) + "P");
        data.bases[apex] = std::move(labels);
        base_ids[apex] = ids;
        inst.cosets.push_back(std::move(ids));
        inst.coset_apex.push_back(apex);
    }
    data.support = std::move(sb).build();
    BlowupGraph x = BlowupGraph::assemble(std::move(data), base_ids);

    for (std::size_t i = 0; i < n; ++i)
        if (inst.words[i].size() + margin <= radius) inst.inner.push_back(static_cast<VertexId>(i));

    // maximal simplices {gP, x}; W-edges follow Cayley adjacency of the x's
    XWPair bare(x, {});
    std::vector<std::size_t> simplex_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        const VertexId v = static_cast<VertexId>(i);
        auto j = bare.find_maxsimp(Simplex{std::min(v, inst.coset_apex[inst.coset_of[i]]),
                                           std::max(v, inst.coset_apex[inst.coset_of[i]])});
        if (!j) throw LemmaViolation("relhyp: missing maximal simplex for word " + inst.words[i]);
        simplex_of[i] = *j;
    }
    std::vector<WEdge> wedges;
    for (const auto& [a, b] : inst.ball.edges())
        wedges.emplace_back(std::min(simplex_of[a], simplex_of[b]), std::max(simplex_of[a], simplex_of[b]));
    std::sort(wedges.begin(), wedges.end());
    inst.xw = bare.with_wedges(wedges);
    return inst;
}

Graph gen_augmented_direct(const RelHypInstance& inst, std::uint32_t cap) {
    if (cap > kMaxHoroballCap) throw InvalidInput("cap above " + std::to_string(kMaxHoroballCap));
    const std::size_t n = inst.ball.order();
    auto id = [&](VertexId x, std::uint32_t depth) {
        return depth == 0 ? x : static_cast<VertexId>(n + (depth - 1) * n + x);
    };
    GraphBuilder b;
    for (std::uint32_t d = 0; d <= cap; ++d)
        for (VertexId x : inst.ball.vertices())
            b.add_vertex(id(x, d), d == 0 ? inst.ball.label(x) : inst.ball.label(x) + "@" + std::to_string(d));
    for (const auto& [x, y] : inst.ball.edges()) b.add_edge(x, y);
    for (const VertexSet& trace : inst.cosets) {
        for (std::uint32_t d = 0; d <= cap; ++d) {
            const std::int64_t reach = std::int64_t{1} << d;
            for (std::size_t i = 0; i < trace.size(); ++i) {
                if (d < cap) b.add_edge(id(trace[i], d), id(trace[i], d + 1));
                for (std::size_t j = i + 1; j < trace.size(); ++j) {
                    const std::int64_t gap = std::abs(inst.exponent[trace[i]] - inst.exponent[trace[j]]);
                    if (gap <= reach) b.add_edge_if_absent(id(trace[i], d), id(trace[j], d));
                }
            }
        }
    }
    return std::move(b).build();
}

IsoCheck check_augmented_iso(const RelHypInstance& inst, std::uint32_t cap, const XWPair* mutated) {
    CuspedOptions opts;
    opts.cap = cap;
    opts.allow_shallow = true;
    const CuspedPair c = build_cusped(mutated ? *mutated : inst.xw, opts);
    const Graph direct = gen_augmented_direct(inst, cap);
    const std::size_t n = inst.ball.order();

    IsoCheck out;
    const auto& simps = c.what().maxsimps();
    if (simps.size() != direct.order()) {
        out.ok = false;
        out.detail = "vertex counts " + std::to_string(simps.size()) + " " + std::to_string(direct.order());
        return out;
    }
    std::vector<VertexId> image(simps.size());
    for (std::size_t i = 0; i < simps.size(); ++i) {
        std::optional<VertexId> point;
        for (VertexId v : simps[i].vertices())
            if (!c.xhat().is_apex(v)) point = v;
        if (!point) throw LemmaViolation("cusped simplex without a base point");
        const VertexId x = c.down_of(*point);
        const std::uint32_t d = c.depth_of(*point);
        image[i] = d == 0 ? x : static_cast<VertexId>(n + (d - 1) * n + x);
    }
    std::vector<std::pair<VertexId, VertexId>> mapped;
    for (const auto& [a, b] : c.what().wedges())
        mapped.emplace_back(std::min(image[a], image[b]), std::max(image[a], image[b]));
    std::sort(mapped.begin(), mapped.end());
    const auto want = direct.edges();
    if (mapped != want) {
        out.ok = false;
        std::vector<std::pair<VertexId, VertexId>> diff;
        std::set_symmetric_difference(mapped.begin(), mapped.end(), want.begin(), want.end(), std::back_inserter(diff));
        out.detail = "edge " + direct.label(diff.front().first) + " " + direct.label(diff.front().second);
        return out;
    }
    out.detail = "edges " + std::to_string(want.size());
    return out;
}

Graph gen_girth5_support(std::uint64_t seed, std::size_t size) {
    if (size == 0) throw InvalidInput("support size must be positive");
    std::mt19937_64 rng(seed);
    GraphBuilder b;
    for (std::size_t v = 0; v < size; ++v) b.add_vertex(static_cast<VertexId>(v));
    std::vector<std::vector<VertexId>> adj(size);
    auto connect = [&](VertexId a, VertexId c) {
        b.add_edge(a, c);
        adj[a].push_back(c);
        adj[c].push_back(a);
    };
    for (std::size_t v = 1; v < size; ++v) connect(static_cast<VertexId>(rng() % v), static_cast<VertexId>(v));
    auto dist = [&](VertexId s, VertexId t) {
        std::vector<int> d(size, -1);
        std::vector<VertexId> q{s};
        d[s] = 0;
        for (std::size_t h = 0; h < q.size(); ++h)
            for (VertexId u : adj[q[h]])
                if (d[u] < 0) {
                    d[u] = d[q[h]] + 1;
                    q.push_back(u);
                }
        return d[t];
    };
    for (std::size_t attempt = 0; attempt < size; ++attempt) {
        const auto a = static_cast<VertexId>(rng() % size);
        const auto c = static_cast<VertexId>(rng() % size);
        if (a == c) continue;
        // a new edge closes a cycle of length d(a, c) + 1
        if (dist(a, c) >= 4) connect(a, c);
    }
    return std::move(b).build();
}

XWPair random_blowup_over(const Graph& support, std::uint64_t seed, std::size_t base_max, double w_density) {
    if (base_max == 0) throw InvalidInput("base_max must be positive");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    BlowupData data;
    data.support = support;
    std::size_t label = 0;
    for (VertexId v : support.vertices()) {
        const std::size_t count = 1 + rng() % base_max;
        auto& labels = data.bases[v];
        for (std::size_t i = 0; i < count; ++i) labels.push_back("p" + std::to_string(label++));
    }
    BlowupGraph x = build_blowup(data);
    XWPair bare(x, {});

    // pairs of maximal simplices that differ in exactly one base point
    std::map<VertexSet, std::vector<std::size_t>> by_face;
    const auto& simps = bare.maxsimps();
    for (std::size_t i = 0; i < simps.size(); ++i)
        for (VertexId q : simps[i].vertices())
            if (!x.is_apex(q)) by_face[sets::subtract(simps[i].vertices(), {q})].push_back(i);
    std::vector<WEdge> candidates;
    for (const auto& [_, group] : by_face)
        for (std::size_t i = 0; i < group.size(); ++i)
            for (std::size_t j = i + 1; j < group.size(); ++j)
                candidates.emplace_back(std::min(group[i], group[j]), std::max(group[i], group[j]));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<WEdge> wedges;
    for (const auto& e : candidates)
        if (unit(rng) < w_density) wedges.push_back(e);
    return bare.with_wedges(wedges);
}

XWPair gen_random_blowup(std::uint64_t seed, std::size_t support_size, std::size_t base_max, double w_density) {
    return random_blowup_over(gen_girth5_support(seed, support_size), seed, base_max, w_density);
}

FamilyKind parse_family_kind(const std::string& name) {
    if (name == "path") return FamilyKind::Path;
    if (name == "cycle") return FamilyKind::Cycle;
    if (name == "grid") return FamilyKind::Grid;
    if (name == "quasiline") return FamilyKind::Quasiline;
    throw InvalidInput("unknown family '" + name + "' (path, cycle, grid, quasiline)");
}

Graph gen_family(FamilyKind kind, std::size_t size) {
    if (size == 0) throw InvalidInput("family size must be positive");
    GraphBuilder b;
    auto v = [](std::size_t i) { return static_cast<VertexId>(i); };
    switch (kind) {
        case FamilyKind::Path:
        case FamilyKind::Quasiline:
            for (std::size_t i = 0; i < size; ++i) b.add_vertex(v(i));
            for (std::size_t i = 0; i + 1 < size; ++i) b.add_edge(v(i), v(i + 1));
            if (kind == FamilyKind::Quasiline)
                for (std::size_t i = 0; i + 2 < size; ++i) b.add_edge(v(i), v(i + 2));
            break;
        case FamilyKind::Cycle:
            if (size < 3) throw InvalidInput("cycles need at least 3 vertices");
            for (std::size_t i = 0; i < size; ++i) b.add_vertex(v(i));
            for (std::size_t i = 0; i < size; ++i) b.add_edge(v(i), v((i + 1) % size));
            break;
        case FamilyKind::Grid:
            for (std::size_t i = 0; i < size * size; ++i) b.add_vertex(v(i));
            for (std::size_t r = 0; r < size; ++r)
                for (std::size_t c = 0; c < size; ++c) {
                    if (c + 1 < size) b.add_edge(v(r * size + c), v(r * size + c + 1));
                    if (r + 1 < size) b.add_edge(v(r * size + c), v((r + 1) * size + c));
                }
            break;
    }
    return std::move(b).build();
}

Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    GraphBuilder b;
    for (std::size_t i = 0; i < n; ++i) b.add_vertex(static_cast<VertexId>(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (unit(rng) < p) b.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
    return std::move(b).build();
}

}  // namespace cuspedkit
