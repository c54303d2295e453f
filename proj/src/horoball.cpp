#include "cuspedkit/horoball.hpp"

#include "cuspedkit/errors.hpp"

#include <algorithm>
#include <string>

namespace cuspedkit {

VertexId Horoball::vertex_at(VertexId base_vertex, std::uint32_t depth) const {
    if (depth > cap_) throw InvalidInput("horoball depth " + std::to_string(depth) + " above cap");
    const std::size_t i = base_.require_index(base_vertex);
    if (depth == 0) return base_vertex;
    return first_deep_id_ + static_cast<VertexId>((depth - 1) * base_ids_.size() + i);
}

std::uint32_t ceil_log2(std::uint64_t t) {
    std::uint32_t k = 0;
    while ((std::uint64_t{1} << k) < t) ++k;
    return k;
}

std::uint32_t default_cap(const Graph& base) {
    const std::uint32_t diam = max_component_diameter(base);
    return ceil_log2(std::max<std::uint32_t>(diam, 1)) + 2;
}

Horoball build_horoball(const Graph& base, std::uint32_t cap) {
    if (cap > kMaxHoroballCap) throw InvalidInput("horoball cap above " + std::to_string(kMaxHoroballCap));
    Horoball h;
    h.base_ = base;
    h.base_ids_ = base.vertex_set();
    h.cap_ = cap;
    const std::size_t n = base.order();
    h.first_deep_id_ = n ? base.vertices().back() + 1 : 0;

    const DistanceMatrix d(base);
    GraphBuilder b;
    std::vector<std::vector<VertexId>> level(cap + 1, std::vector<VertexId>(n));
    for (std::uint32_t depth = 0; depth <= cap; ++depth) {
        for (std::size_t i = 0; i < n; ++i) {
            const VertexId p = base.id_at(i);
            const VertexId id = depth == 0 ? p : h.first_deep_id_ + static_cast<VertexId>((depth - 1) * n + i);
            level[depth][i] = id;
            b.add_vertex(id, depth == 0 ? base.label(p) : std::to_string(p) + "@" + std::to_string(depth));
        }
    }
    for (std::uint32_t depth = 0; depth <= cap; ++depth) {
        const std::uint64_t reach = std::uint64_t{1} << depth;
        for (std::size_t i = 0; i < n; ++i) {
            if (depth < cap) b.add_edge(level[depth][i], level[depth + 1][i]);
            for (std::size_t j = i + 1; j < n; ++j) {
                const Distance dij = d.at(i, j);
                if (dij.is_finite() && dij.hops() <= reach) b.add_edge(level[depth][i], level[depth][j]);
            }
        }
    }
    h.graph_ = std::move(b).build();
    h.depth_.resize(h.graph_.order());
    h.origin_.resize(h.graph_.order());
    for (std::uint32_t depth = 0; depth <= cap; ++depth) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t gi = h.graph_.require_index(level[depth][i]);
            h.depth_[gi] = depth;
            h.origin_[gi] = base.id_at(i);
        }
    }
    return h;
}

bool horoball_bound_holds(std::uint64_t d_hor, std::uint64_t d_base) {
    // (2/3) log2(t) + 1 <= d  <=>  t^2 <= 2^(3(d-1))
    if (d_hor == 0) return false;
    const std::uint64_t exponent = 3 * (d_hor - 1);
    if (exponent >= 126) return true;
    const unsigned __int128 lhs = static_cast<unsigned __int128>(d_base) * d_base;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(1) << exponent;
    return lhs <= rhs;
}

HoroballBoundCheck check_horoball_lower_bound(const Horoball& h) {
    const Graph& base = h.base_graph();
    if (h.cap() < default_cap(base))
        throw InvalidInput("horoball cap " + std::to_string(h.cap()) + " below the trusted depth " +
                           std::to_string(default_cap(base)));
    HoroballBoundCheck out;
    const std::size_t n = base.order();
    const Graph& g = h.graph();

    VertexSet below_top;
    for (VertexId v : g.vertices())
        if (h.depth_of(v) < h.cap()) below_top.push_back(v);
    const Graph lowered = induced(g, below_top);

    std::vector<std::int32_t> dbase, dhor, dlow;
    std::vector<std::uint32_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
        const VertexId x = base.id_at(i);
        bfs_indices(base, i, dbase, queue);
        bfs_indices(g, g.require_index(x), dhor, queue);
        bfs_indices(lowered, lowered.require_index(x), dlow, queue);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dbase[j] < 1) continue;
            const VertexId y = base.id_at(j);
            const std::int32_t dh = dhor[g.require_index(y)];
            ++out.pairs_checked;
            if (dlow[lowered.require_index(y)] != dh) ++out.top_layer_pairs;
            if (out.ok && !horoball_bound_holds(static_cast<std::uint64_t>(dh), static_cast<std::uint64_t>(dbase[j]))) {
                out.ok = false;
                out.counterexample = std::make_pair(x, y);
            }
        }
    }
    return out;
}

}  // namespace cuspedkit
