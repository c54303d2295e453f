#pragma once

// Brute-force reference implementations. Everything here is written for
// clarity over speed and shares no code with the library beyond Graph itself.

#include "cuspedkit/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using cuspedkit::Graph;
using cuspedkit::GraphBuilder;
using cuspedkit::VertexId;
using cuspedkit::VertexSet;

constexpr long kInf = -1;

inline Graph make_graph(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
    GraphBuilder b;
    for (std::size_t i = 0; i < n; ++i) b.add_vertex(static_cast<VertexId>(i));
    for (auto [a, c] : edges) b.add_edge(a, c);
    return std::move(b).build();
}

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    GraphBuilder b;
    for (std::size_t i = 0; i < n; ++i) b.add_vertex(static_cast<VertexId>(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng)) b.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
    return std::move(b).build();
}

inline bool adjacent(const Graph& g, VertexId a, VertexId b) {
    for (VertexId c : g.neighbors(a))
        if (c == b) return true;
    return false;
}

// Floyd–Warshall keyed by vertex id.
class Metric {
 public:
    explicit Metric(const Graph& g) {
        ids_.assign(g.vertices().begin(), g.vertices().end());
        const std::size_t n = ids_.size();
        for (std::size_t i = 0; i < n; ++i) pos_[ids_[i]] = i;
        d_.assign(n, std::vector<long>(n, kInf));
        for (std::size_t i = 0; i < n; ++i) {
            d_[i][i] = 0;
            for (VertexId c : g.neighbors(ids_[i])) d_[i][pos_[c]] = 1;
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                if (d_[i][k] == kInf) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (d_[k][j] == kInf) continue;
                    const long via = d_[i][k] + d_[k][j];
                    if (d_[i][j] == kInf || via < d_[i][j]) d_[i][j] = via;
                }
            }
    }

    long operator()(VertexId a, VertexId b) const { return d_[pos_.at(a)][pos_.at(b)]; }
    const std::vector<VertexId>& ids() const { return ids_; }

 private:
    std::vector<VertexId> ids_;
    std::map<VertexId, std::size_t> pos_;
    std::vector<std::vector<long>> d_;
};

inline VertexSet link(const Graph& g, const VertexSet& s) {
    VertexSet out;
    for (VertexId v : g.vertices()) {
        if (std::find(s.begin(), s.end(), v) != s.end()) continue;
        bool all = true;
        for (VertexId u : s) all = all && adjacent(g, u, v);
        if (all) out.push_back(v);
    }
    return out;
}

inline bool is_clique(const Graph& g, const VertexSet& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!adjacent(g, s[i], s[j])) return false;
    return true;
}

// All cliques (including the empty one) by subset enumeration; n <= 20.
inline std::vector<VertexSet> all_simplices(const Graph& g) {
    const std::vector<VertexId> ids(g.vertices().begin(), g.vertices().end());
    std::vector<VertexSet> out;
    for (std::uint32_t mask = 0; mask < (1u << ids.size()); ++mask) {
        VertexSet s;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (mask >> i & 1u) s.push_back(ids[i]);
        if (is_clique(g, s)) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<VertexSet> maximal_cliques(const Graph& g) {
    const auto all = all_simplices(g);
    std::vector<VertexSet> out;
    for (const auto& s : all) {
        bool maximal = true;
        for (const auto& t : all)
            if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end())) maximal = false;
        if (maximal) out.push_back(s);
    }
    return out;
}

// Doubled four-point constant over ordered quadruples inside one component.
inline long four_point_twice(const Graph& g) {
    const Metric d(g);
    const auto& v = d.ids();
    long best = 0;
    for (VertexId a : v)
        for (VertexId b : v)
            for (VertexId c : v)
                for (VertexId e : v) {
                    if (d(a, b) == kInf || d(a, c) == kInf || d(a, e) == kInf) continue;
                    long s[3] = {d(a, b) + d(c, e), d(a, c) + d(b, e), d(a, e) + d(b, c)};
                    std::sort(s, s + 3);
                    best = std::max(best, s[2] - s[1]);
                }
    return best;
}

// Smallest doubled half-integer K >= 1 with d_sub <= K d_amb + K; nullopt when none up to cap.
inline std::optional<long> distortion_twice(const Graph& amb, const Graph& sub, long cap_twice = 128) {
    const Metric da(amb), ds(sub);
    for (long t = 2; t <= cap_twice; ++t) {
        bool ok = true;
        for (VertexId p : sub.vertices())
            for (VertexId q : sub.vertices()) {
                if (da(p, q) == kInf) continue;
                if (ds(p, q) == kInf) return std::nullopt;
                if (2 * ds(p, q) > t * (da(p, q) + 1)) ok = false;
            }
        if (ok) return t;
    }
    return std::nullopt;
}

// Horoball edges on (base id, depth) pairs, straight from the adjacency rule.
inline std::set<std::pair<std::pair<VertexId, unsigned>, std::pair<VertexId, unsigned>>> horoball_edges(
    const Graph& base, unsigned cap) {
    const Metric d(base);
    std::set<std::pair<std::pair<VertexId, unsigned>, std::pair<VertexId, unsigned>>> out;
    for (unsigned n = 0; n <= cap; ++n)
        for (VertexId p : base.vertices()) {
            if (n < cap) out.insert({{p, n}, {p, n + 1}});
            for (VertexId q : base.vertices())
                if (p < q && d(p, q) != kInf && d(p, q) <= (1L << n)) out.insert({{p, n}, {q, n}});
        }
    return out;
}

// Exhaustive search for Π ⊇ Σ and Ψ with Lk(Σ) ∩ Lk(Φ) = Lk(Π) ⋆ Ψ.
inline bool cleanish(const Graph& g) {
    const auto simps = all_simplices(g);
    std::map<VertexSet, VertexSet> lk;
    for (const auto& s : simps) lk[s] = link(g, s);
    for (const auto& sigma : simps)
        for (const auto& phi : simps) {
            VertexSet inter;
            std::set_intersection(lk[sigma].begin(), lk[sigma].end(), lk[phi].begin(), lk[phi].end(),
                                  std::back_inserter(inter));
            bool found = false;
            for (const auto& pi : simps) {
                if (found) break;
                if (!std::includes(pi.begin(), pi.end(), sigma.begin(), sigma.end())) continue;
                for (const auto& psi : simps) {
                    const VertexSet& l = lk[pi];
                    VertexSet both;
                    std::set_intersection(l.begin(), l.end(), psi.begin(), psi.end(), std::back_inserter(both));
                    if (!both.empty()) continue;
                    VertexSet uni;
                    std::set_union(l.begin(), l.end(), psi.begin(), psi.end(), std::back_inserter(uni));
                    if (uni != inter) continue;
                    bool join = true;
                    for (VertexId a : l)
                        for (VertexId b : psi) join = join && adjacent(g, a, b);
                    if (join) {
                        found = true;
                        break;
                    }
                }
            }
            if (!found) return false;
        }
    return true;
}

// Relabels ids through an arbitrary injective map (used for invariance checks).
inline std::map<VertexId, VertexId> shuffled_ids(const Graph& g, std::uint64_t seed, VertexId offset = 1000) {
    std::vector<VertexId> ids(g.vertices().begin(), g.vertices().end());
    std::vector<VertexId> img(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) img[i] = offset + static_cast<VertexId>(3 * i);
    std::mt19937_64 rng(seed);
    std::shuffle(img.begin(), img.end(), rng);
    std::map<VertexId, VertexId> m;
    for (std::size_t i = 0; i < ids.size(); ++i) m[ids[i]] = img[i];
    return m;
}

}  // namespace oracle
