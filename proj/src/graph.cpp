#include "cuspedkit/graph.hpp"

#include "cuspedkit/errors.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace cuspedkit {

namespace sets {

VertexSet make(std::vector<VertexId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

VertexSet unite(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet subtract(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool contains(const VertexSet& s, VertexId v) { return std::binary_search(s.begin(), s.end(), v); }

bool includes(const VertexSet& super, const VertexSet& sub) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool disjoint(const VertexSet& a, const VertexSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return false;
        if (*i < *j) ++i; else ++j;
    }
    return true;
}

std::string to_string(const VertexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s[i]);
    }
    out += '}';
    return out;
}

}  // namespace sets

std::ostream& operator<<(std::ostream& os, const Distance& d) {
    if (d.is_finite()) return os << d.hops();
    return os << "inf";
}

Simplex::Simplex(std::initializer_list<VertexId> ids) : Simplex(std::vector<VertexId>(ids)) {}

Simplex::Simplex(std::vector<VertexId> ids) : vertices_(std::move(ids)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw InvalidInput("simplex has a repeated vertex");
}

bool Simplex::contains(VertexId v) const { return sets::contains(vertices_, v); }

std::ostream& operator<<(std::ostream& os, const Simplex& s) { return os << sets::to_string(s.vertices()); }

// ---------------------------------------------------------------- builder

std::uint64_t GraphBuilder::key(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

GraphBuilder& GraphBuilder::add_vertex(VertexId id, std::string label) {
    if (!labels_.emplace(id, std::move(label)).second)
        throw InvalidInput("duplicate vertex id " + std::to_string(id));
    return *this;
}

bool GraphBuilder::has_edge(VertexId a, VertexId b) const { return edge_keys_.contains(key(a, b)); }

GraphBuilder& GraphBuilder::add_edge(VertexId a, VertexId b) {
    if (a == b) throw InvalidInput("self-loop at vertex " + std::to_string(a));
    if (!has_vertex(a) || !has_vertex(b))
        throw InvalidInput("edge " + std::to_string(a) + "-" + std::to_string(b) + " uses an unknown vertex");
    if (!edge_keys_.insert(key(a, b)).second)
        throw InvalidInput("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    edges_.emplace_back(a, b);
    return *this;
}

GraphBuilder& GraphBuilder::add_edge_if_absent(VertexId a, VertexId b) {
    if (a != b && has_edge(a, b)) return *this;
    return add_edge(a, b);
}

Graph GraphBuilder::build() && {
    Graph g;
    g.ids_.reserve(labels_.size());
    for (const auto& [id, label] : labels_) g.ids_.push_back(id);
    std::sort(g.ids_.begin(), g.ids_.end());
    const std::size_t n = g.ids_.size();

    const VertexId max_id = n ? g.ids_.back() : 0;
    if (n && max_id <= 16 * n + 4096) {
        g.dense_index_.assign(static_cast<std::size_t>(max_id) + 1, 0xffffffffu);
        for (std::size_t i = 0; i < n; ++i) g.dense_index_[g.ids_[i]] = static_cast<std::uint32_t>(i);
    } else {
        for (std::size_t i = 0; i < n; ++i) g.sparse_index_.emplace(g.ids_[i], static_cast<std::uint32_t>(i));
    }

    g.labels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.labels_[i] = std::move(labels_.at(g.ids_[i]));

    g.adj_.assign(n, {});
    for (const auto& [a, b] : edges_) {
        const auto ia = static_cast<std::uint32_t>(*g.index_of(a));
        const auto ib = static_cast<std::uint32_t>(*g.index_of(b));
        g.adj_[ia].push_back(ib);
        g.adj_[ib].push_back(ia);
    }
    for (auto& row : g.adj_) std::sort(row.begin(), row.end());
    g.edge_count_ = edges_.size();

    if (n <= 8192) {
        g.words_per_row_ = (n + 63) / 64;
        g.bits_.assign(n * g.words_per_row_, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::uint32_t j : g.adj_[i]) g.bits_[i * g.words_per_row_ + j / 64] |= std::uint64_t{1} << (j % 64);
    }
    return g;
}

// ---------------------------------------------------------------- graph

std::optional<std::size_t> Graph::index_of(VertexId id) const {
    if (!dense_index_.empty()) {
        if (id >= dense_index_.size() || dense_index_[id] == 0xffffffffu) return std::nullopt;
        return dense_index_[id];
    }
    auto it = sparse_index_.find(id);
    if (it == sparse_index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Graph::require_index(VertexId id) const {
    auto i = index_of(id);
    if (!i) throw InvalidInput("unknown vertex id " + std::to_string(id));
    return *i;
}

VertexSet Graph::neighbors(VertexId id) const {
    VertexSet out;
    for (std::uint32_t j : adj_[require_index(id)]) out.push_back(ids_[j]);
    return out;
}

bool Graph::adjacent_indices(std::size_t a, std::size_t b) const {
    if (words_per_row_) return (bits_[a * words_per_row_ + b / 64] >> (b % 64)) & 1u;
    const auto& row = adj_[a];
    return std::binary_search(row.begin(), row.end(), static_cast<std::uint32_t>(b));
}

bool Graph::adjacent(VertexId a, VertexId b) const {
    auto ia = index_of(a);
    auto ib = index_of(b);
    if (!ia || !ib) return false;
    return adjacent_indices(*ia, *ib);
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edge_count_);
    for (std::size_t i = 0; i < adj_.size(); ++i)
        for (std::uint32_t j : adj_[i])
            if (j > i) out.emplace_back(ids_[i], ids_[j]);
    return out;
}

bool operator==(const Graph& a, const Graph& b) {
    return a.ids_ == b.ids_ && a.labels_ == b.labels_ && a.adj_ == b.adj_;
}

// ---------------------------------------------------------------- metrics

void bfs_indices(const Graph& g, std::size_t source, std::vector<std::int32_t>& dist,
                 std::vector<std::uint32_t>& queue) {
    dist.assign(g.order(), -1);
    queue.clear();
    queue.push_back(static_cast<std::uint32_t>(source));
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t u = queue[head];
        for (std::uint32_t w : g.neighbor_indices(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

DistanceMatrix::DistanceMatrix(const Graph& g) : n_(g.order()), ids_(g.vertices().begin(), g.vertices().end()) {
    hops_.assign(n_ * n_, kUnreached);
    std::vector<std::int32_t> dist;
    std::vector<std::uint32_t> queue;
    for (std::size_t s = 0; s < n_; ++s) {
        bfs_indices(g, s, dist, queue);
        for (std::size_t t = 0; t < n_; ++t)
            if (dist[t] >= 0) hops_[s * n_ + t] = static_cast<std::uint32_t>(dist[t]);
    }
    for (std::size_t i = 0; i < n_; ++i) index_.emplace(ids_[i], i);
}

Distance DistanceMatrix::between(VertexId a, VertexId b) const {
    auto ia = index_.find(a);
    auto ib = index_.find(b);
    if (ia == index_.end() || ib == index_.end()) throw InvalidInput("distance query on unknown vertex");
    return at(ia->second, ib->second);
}

DistanceMatrix distance_matrix(const Graph& g) { return DistanceMatrix(g); }

std::vector<Distance> distances_from(const Graph& g, VertexId source) {
    std::vector<std::int32_t> dist;
    std::vector<std::uint32_t> queue;
    bfs_indices(g, g.require_index(source), dist, queue);
    std::vector<Distance> out(g.order(), Distance::infinity());
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist[i] >= 0) out[i] = Distance(static_cast<std::uint32_t>(dist[i]));
    return out;
}

std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<VertexSet> comps;
    std::vector<std::int32_t> dist;
    std::vector<std::uint32_t> queue;
    std::vector<bool> seen(g.order(), false);
    for (std::size_t s = 0; s < g.order(); ++s) {
        if (seen[s]) continue;
        bfs_indices(g, s, dist, queue);
        VertexSet comp;
        for (std::uint32_t i : queue) {
            seen[i] = true;
            comp.push_back(g.id_at(i));
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

Distance diameter(const Graph& g) {
    std::vector<std::int32_t> dist;
    std::vector<std::uint32_t> queue;
    std::uint32_t best = 0;
    for (std::size_t s = 0; s < g.order(); ++s) {
        bfs_indices(g, s, dist, queue);
        if (queue.size() != g.order()) return Distance::infinity();
        best = std::max(best, static_cast<std::uint32_t>(dist[queue.back()]));
    }
    return Distance(best);
}

std::uint32_t max_component_diameter(const Graph& g) {
    std::vector<std::int32_t> dist;
    std::vector<std::uint32_t> queue;
    std::uint32_t best = 0;
    for (std::size_t s = 0; s < g.order(); ++s) {
        bfs_indices(g, s, dist, queue);
        best = std::max(best, static_cast<std::uint32_t>(dist[queue.back()]));
    }
    return best;
}

// ---------------------------------------------------------------- simplices

bool is_simplex(const Graph& g, const VertexSet& vs) {
    std::vector<std::size_t> idx;
    idx.reserve(vs.size());
    for (VertexId v : vs) {
        auto i = g.index_of(v);
        if (!i) return false;
        idx.push_back(*i);
    }
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            if (!g.adjacent_indices(idx[a], idx[b])) return false;
    return true;
}

void require_simplex(const Graph& g, const Simplex& s) {
    if (!is_simplex(g, s.vertices())) throw InvalidInput("not a simplex of the graph: " + sets::to_string(s.vertices()));
}

VertexSet common_link(const Graph& g, const VertexSet& vs) {
    if (vs.empty()) return g.vertex_set();
    // start from the smallest neighbourhood
    std::size_t best = g.require_index(vs.front());
    for (VertexId v : vs) {
        const std::size_t i = g.require_index(v);
        if (g.neighbor_indices(i).size() < g.neighbor_indices(best).size()) best = i;
    }
    std::vector<std::size_t> idx;
    for (VertexId v : vs) idx.push_back(g.require_index(v));
    VertexSet out;
    for (std::uint32_t cand : g.neighbor_indices(best)) {
        bool ok = true;
        for (std::size_t i : idx) {
            if (i == cand || !g.adjacent_indices(i, cand)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(g.id_at(cand));
    }
    return out;
}

VertexSet link(const Graph& g, const Simplex& s) {
    require_simplex(g, s);
    return common_link(g, s.vertices());
}

VertexSet star(const Graph& g, const Simplex& s) { return sets::unite(link(g, s), s.vertices()); }

namespace {

// Bron–Kerbosch with Tomita pivoting on sorted index vectors.
void bron_kerbosch(const Graph& g, std::vector<std::uint32_t>& r, std::vector<std::uint32_t> p,
                   std::vector<std::uint32_t> x, std::vector<std::vector<std::uint32_t>>& out) {
    if (p.empty()) {
        if (x.empty()) out.push_back(r);
        return;
    }
    auto count_in = [&](std::uint32_t u, const std::vector<std::uint32_t>& set) {
        std::size_t c = 0;
        for (std::uint32_t w : set)
            if (g.adjacent_indices(u, w)) ++c;
        return c;
    };
    std::uint32_t pivot = p.front();
    std::size_t best = 0;
    bool first = true;
    for (const auto* set : {&p, &x}) {
        for (std::uint32_t u : *set) {
            const std::size_t c = count_in(u, p);
            if (first || c > best) {
                pivot = u;
                best = c;
                first = false;
            }
        }
    }
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t v : p)
        if (!g.adjacent_indices(pivot, v)) candidates.push_back(v);
    for (std::uint32_t v : candidates) {
        std::vector<std::uint32_t> np, nx;
        for (std::uint32_t w : p)
            if (g.adjacent_indices(v, w)) np.push_back(w);
        for (std::uint32_t w : x)
            if (g.adjacent_indices(v, w)) nx.push_back(w);
        r.push_back(v);
        bron_kerbosch(g, r, std::move(np), std::move(nx), out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.insert(std::upper_bound(x.begin(), x.end(), v), v);
    }
}

}  // namespace

std::vector<Simplex> maximal_simplices(const Graph& g) {
    std::vector<std::vector<std::uint32_t>> raw;
    std::vector<std::uint32_t> r;
    std::vector<std::uint32_t> p(g.order());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint32_t>(i);
    if (g.order() == 0) return {Simplex{}};
    bron_kerbosch(g, r, std::move(p), {}, raw);
    std::vector<Simplex> out;
    out.reserve(raw.size());
    for (auto& clique : raw) {
        std::vector<VertexId> ids;
        for (std::uint32_t i : clique) ids.push_back(g.id_at(i));
        out.emplace_back(std::move(ids));
    }
    std::sort(out.begin(), out.end());
    return out;
}

void for_each_simplex(const Graph& g, const std::function<void(const VertexSet&)>& visit, std::size_t limit) {
    std::size_t count = 0;
    VertexSet current;
    std::function<void(const std::vector<std::uint32_t>&)> extend = [&](const std::vector<std::uint32_t>& cand) {
        if (++count > limit) throw SizeGuardExceeded("simplex enumeration exceeded " + std::to_string(limit));
        visit(current);
        for (std::size_t k = 0; k < cand.size(); ++k) {
            const std::uint32_t v = cand[k];
            std::vector<std::uint32_t> next;
            for (std::size_t m = k + 1; m < cand.size(); ++m)
                if (g.adjacent_indices(v, cand[m])) next.push_back(cand[m]);
            current.push_back(g.id_at(v));
            extend(next);
            current.pop_back();
        }
    };
    std::vector<std::uint32_t> all(g.order());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
    extend(all);
}

Graph induced(const Graph& g, const VertexSet& vs) {
    GraphBuilder b;
    std::vector<std::size_t> idx;
    idx.reserve(vs.size());
    for (VertexId v : vs) {
        idx.push_back(g.require_index(v));
        b.add_vertex(v, g.label(v));
    }
    std::vector<bool> keep(g.order(), false);
    for (std::size_t i : idx) keep[i] = true;
    for (std::size_t i : idx)
        for (std::uint32_t j : g.neighbor_indices(i))
            if (keep[j] && j > i) b.add_edge(g.id_at(i), g.id_at(j));
    return std::move(b).build();
}

bool is_join(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (!sets::disjoint(a, b)) throw InvalidInput("is_join: vertex sets overlap");
    for (VertexId u : a) {
        const std::size_t iu = g.require_index(u);
        for (VertexId w : b)
            if (!g.adjacent_indices(iu, g.require_index(w))) return false;
    }
    return true;
}

Graph relabel(const Graph& g, const std::unordered_map<VertexId, VertexId>& map) {
    GraphBuilder b;
    for (VertexId v : g.vertices()) b.add_vertex(map.at(v), g.label(v));
    for (const auto& [u, w] : g.edges()) b.add_edge(map.at(u), map.at(w));
    return std::move(b).build();
}

}  // namespace cuspedkit
