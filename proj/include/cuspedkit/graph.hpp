#pragma once

// Finite simple graphs, simplices (cliques) and the link/star calculus.
//
// Vertex ids are non-negative integers chosen by the caller. Internally every
// graph also numbers its vertices 0..order()-1 in increasing id order; the
// index-based accessors exist for the hot loops (BFS, clique search) and are
// stable for the lifetime of the immutable Graph.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace cuspedkit {

using VertexId = std::uint32_t;

// Strictly increasing list of vertex ids.
using VertexSet = std::vector<VertexId>;

namespace sets {

VertexSet make(std::vector<VertexId> ids);  // sorts and removes duplicates
VertexSet unite(const VertexSet& a, const VertexSet& b);
VertexSet intersect(const VertexSet& a, const VertexSet& b);
VertexSet subtract(const VertexSet& a, const VertexSet& b);
bool contains(const VertexSet& s, VertexId v);
bool includes(const VertexSet& super, const VertexSet& sub);
bool disjoint(const VertexSet& a, const VertexSet& b);
std::string to_string(const VertexSet& s);  // "{1,2,3}"

}  // namespace sets

// Hop distance or the distinguished value Infinity (different components).
class Distance {
 public:
    constexpr Distance() = default;
    constexpr explicit Distance(std::uint32_t hops) : hops_(hops), finite_(true) {}

    static constexpr Distance infinity() {
        Distance d;
        d.finite_ = false;
        return d;
    }

    constexpr bool is_finite() const { return finite_; }
    constexpr std::uint32_t hops() const { return hops_; }

    constexpr bool operator==(const Distance& o) const {
        return finite_ == o.finite_ && (!finite_ || hops_ == o.hops_);
    }
    constexpr std::strong_ordering operator<=>(const Distance& o) const {
        if (finite_ != o.finite_) return finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
        if (!finite_) return std::strong_ordering::equal;
        return hops_ <=> o.hops_;
    }

 private:
    std::uint32_t hops_ = 0;
    bool finite_ = true;
};

std::ostream& operator<<(std::ostream& os, const Distance& d);

// A clique of some graph, stored canonically. The empty simplex is allowed.
class Simplex {
 public:
    Simplex() = default;
    Simplex(std::initializer_list<VertexId> ids);
    explicit Simplex(std::vector<VertexId> ids);  // throws InvalidInput on repeats

    const VertexSet& vertices() const& { return vertices_; }
    VertexSet vertices() && { return std::move(vertices_); }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }
    bool contains(VertexId v) const;

    auto operator<=>(const Simplex&) const = default;

 private:
    VertexSet vertices_;
};

std::ostream& operator<<(std::ostream& os, const Simplex& s);

class Graph;

class GraphBuilder {
 public:
    GraphBuilder& add_vertex(VertexId id, std::string label = {});
    GraphBuilder& add_edge(VertexId a, VertexId b);
    // Same as add_edge but silently ignores an existing edge.
    GraphBuilder& add_edge_if_absent(VertexId a, VertexId b);

    bool has_vertex(VertexId id) const { return labels_.contains(id); }
    bool has_edge(VertexId a, VertexId b) const;

    Graph build() &&;

 private:
    static std::uint64_t key(VertexId a, VertexId b);

    std::unordered_map<VertexId, std::string> labels_;
    std::vector<std::pair<VertexId, VertexId>> edges_;
    std::unordered_set<std::uint64_t> edge_keys_;
};

class Graph {
 public:
    Graph() = default;

    std::size_t order() const { return ids_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    std::span<const VertexId> vertices() const { return ids_; }
    VertexSet vertex_set() const { return ids_; }
    VertexId id_at(std::size_t index) const { return ids_[index]; }
    std::optional<std::size_t> index_of(VertexId id) const;
    std::size_t require_index(VertexId id) const;  // throws InvalidInput
    bool contains(VertexId id) const { return index_of(id).has_value(); }

    std::span<const std::uint32_t> neighbor_indices(std::size_t index) const { return adj_[index]; }
    VertexSet neighbors(VertexId id) const;
    std::size_t degree(VertexId id) const { return adj_[require_index(id)].size(); }

    bool adjacent(VertexId a, VertexId b) const;
    bool adjacent_indices(std::size_t a, std::size_t b) const;

    const std::string& label(VertexId id) const { return labels_[require_index(id)]; }

    // Edges as (smaller id, larger id), sorted.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    // Id-preserving equality; labels included.
    friend bool operator==(const Graph& a, const Graph& b);

 private:
    friend class GraphBuilder;

    std::vector<VertexId> ids_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::uint32_t>> adj_;
    std::size_t edge_count_ = 0;

    // id -> index; dense table when ids are compact, hash map otherwise
    std::vector<std::uint32_t> dense_index_;
    std::unordered_map<VertexId, std::uint32_t> sparse_index_;

    // optional adjacency bit matrix for small graphs
    std::vector<std::uint64_t> bits_;
    std::size_t words_per_row_ = 0;
};

// All-pairs hop distances, indexed like the graph (0..order()-1).
class DistanceMatrix {
 public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(const Graph& g);

    std::size_t size() const { return n_; }
    Distance at(std::size_t i, std::size_t j) const {
        const std::uint32_t h = hops_[i * n_ + j];
        return h == kUnreached ? Distance::infinity() : Distance(h);
    }
    Distance between(VertexId a, VertexId b) const;
    std::span<const VertexId> vertices() const { return ids_; }

 private:
    static constexpr std::uint32_t kUnreached = 0xffffffffu;

    std::size_t n_ = 0;
    std::vector<VertexId> ids_;
    std::vector<std::uint32_t> hops_;
    std::unordered_map<VertexId, std::size_t> index_;
};

DistanceMatrix distance_matrix(const Graph& g);

// BFS distances from one vertex, indexed like the graph.
std::vector<Distance> distances_from(const Graph& g, VertexId source);

// Raw BFS on indices; unreachable entries are left at -1.
void bfs_indices(const Graph& g, std::size_t source, std::vector<std::int32_t>& dist,
                 std::vector<std::uint32_t>& queue);

bool is_simplex(const Graph& g, const VertexSet& vs);
void require_simplex(const Graph& g, const Simplex& s);

// Vertices adjacent to every vertex of vs and not in vs; no clique requirement.
VertexSet common_link(const Graph& g, const VertexSet& vs);

VertexSet link(const Graph& g, const Simplex& s);
VertexSet star(const Graph& g, const Simplex& s);

// Inclusion-maximal cliques, each sorted, the list sorted lexicographically.
std::vector<Simplex> maximal_simplices(const Graph& g);

// Calls visit for every simplex (the empty one first). Throws SizeGuardExceeded
// after `limit` simplices.
void for_each_simplex(const Graph& g, const std::function<void(const VertexSet&)>& visit,
                      std::size_t limit = 1'000'000);

Graph induced(const Graph& g, const VertexSet& vs);

bool is_join(const Graph& g, const VertexSet& a, const VertexSet& b);

std::vector<VertexSet> connected_components(const Graph& g);

// Largest distance; Infinity when disconnected, 0 for at most one vertex.
Distance diameter(const Graph& g);

// Largest diameter over connected components.
std::uint32_t max_component_diameter(const Graph& g);

// Relabels vertex ids through `map` (must be injective on g's vertices).
Graph relabel(const Graph& g, const std::unordered_map<VertexId, VertexId>& map);

}  // namespace cuspedkit
