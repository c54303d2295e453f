#pragma once

// Truncated combinatorial horoballs.
//
// Vertices are base × {0..cap}. (p,n)–(p,n+1) is always an edge; (p,n)–(q,n) is an
// edge iff d_base(p,q) <= 2^n. Depth-0 vertices keep their base ids; deeper
// vertices get fresh ids above the largest base id and labels "p@n".

#include "cuspedkit/graph.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace cuspedkit {

inline constexpr std::uint32_t kMaxHoroballCap = 62;

class Horoball {
 public:
    const Graph& graph() const { return graph_; }
    const Graph& base_graph() const { return base_; }
    const VertexSet& base() const { return base_ids_; }
    std::uint32_t cap() const { return cap_; }

    VertexId vertex_at(VertexId base_vertex, std::uint32_t depth) const;
    std::uint32_t depth_of(VertexId v) const { return depth_[graph_.require_index(v)]; }
    VertexId origin_of(VertexId v) const { return origin_[graph_.require_index(v)]; }

 private:
    friend Horoball build_horoball(const Graph& base, std::uint32_t cap);

    Graph graph_;
    Graph base_;
    VertexSet base_ids_;
    std::uint32_t cap_ = 0;
    VertexId first_deep_id_ = 0;
    std::vector<std::uint32_t> depth_;   // by graph index
    std::vector<VertexId> origin_;       // by graph index
};

// Throws InvalidInput for cap > kMaxHoroballCap.
Horoball build_horoball(const Graph& base, std::uint32_t cap);

// ceil(log2(max(diam, 1))) + 2 over the largest finite component diameter.
std::uint32_t default_cap(const Graph& base);

// ceil(log2(t)) for t >= 1.
std::uint32_t ceil_log2(std::uint64_t t);

struct HoroballBoundCheck {
    bool ok = true;
    std::optional<std::pair<VertexId, VertexId>> counterexample;
    std::size_t pairs_checked = 0;
    // Base pairs whose horoball distance changes when the top layer is removed,
    // i.e. whose geodesics need the truncation layer.
    std::size_t top_layer_pairs = 0;
};

// d_Hor(x,y) >= (2/3) log2(d_base(x,y)) + 1 for all base pairs at finite distance >= 1.
// The comparison is done exactly: 2^(3(d_Hor - 1)) >= d_base^2.
// Throws InvalidInput when h.cap() < default_cap(base).
HoroballBoundCheck check_horoball_lower_bound(const Horoball& h);

// Exact integer form of the bound above.
bool horoball_bound_holds(std::uint64_t d_hor, std::uint64_t d_base);

}  // namespace cuspedkit
