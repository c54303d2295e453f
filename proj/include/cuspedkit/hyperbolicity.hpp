#pragma once

// Gromov four-point hyperbolicity and quasi-isometric distortion of subgraphs.

#include "cuspedkit/graph.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cuspedkit {

// Renders a value stored in halves: 2 -> "1", 3 -> "1.5".
std::string format_half(std::uint64_t twice);

struct DeltaReport {
    struct Component {
        VertexSet vertices;
        std::uint32_t twice_delta = 0;
    };

    // δ is half-integral, so it is stored doubled.
    std::uint32_t twice_delta = 0;
    // Quadruple realising the maximum; absent only for the empty graph.
    std::optional<std::array<VertexId, 4>> witness;
    std::vector<Component> per_component;

    double delta() const { return twice_delta / 2.0; }
};

// Max over quadruples inside one component of (L1 - L2) / 2, where L1 >= L2 >= L3
// are the three pairwise distance sums. Cross-component quadruples are skipped.
// `jobs` > 1 splits the scan across threads; the result does not depend on it.
DeltaReport four_point_delta(const Graph& g, unsigned jobs = 1);

// The doubled four-point value of one quadruple (all four pairwise distances finite).
std::uint32_t four_point_value(const DistanceMatrix& d, const std::array<VertexId, 4>& q);

struct DistortionReport {
    // Smallest half-integer K >= 1 with d_sub <= K d_amb + K, doubled; empty = Infinity.
    std::optional<std::uint32_t> twice_mult;
    // Pair forcing the constant (or exhibiting the infinite sub-distance).
    std::optional<std::pair<VertexId, VertexId>> witness;
    // d_amb <= d_sub on every pair; only informative when the subgraph has non-ambient edges.
    bool lower_ok = true;
    std::optional<std::pair<VertexId, VertexId>> lower_witness;

    bool finite() const { return twice_mult.has_value(); }
    double mult() const { return twice_mult ? *twice_mult / 2.0 : -1.0; }
    std::string to_string() const { return twice_mult ? format_half(*twice_mult) : "inf"; }
};

inline constexpr double kDefaultDistortionCap = 64.0;

// Distortion of the induced subgraph on `sub_vertices` inside `amb`.
DistortionReport distortion(const Graph& amb, const VertexSet& sub_vertices, double cap = kDefaultDistortionCap);

// Same, for an explicit subgraph (its edges may exceed the induced ones).
DistortionReport distortion(const Graph& amb, const Graph& sub, double cap = kDefaultDistortionCap);

struct EmbeddingCheck {
    bool ok = true;
    std::optional<std::pair<VertexId, VertexId>> counterexample;
};

// Checks lower(d_dom(x,x')) <= d_cod(f x, f x') <= upper(d_dom(x,x')) over pairs of
// distinct domain vertices at finite distance. Pairs are scanned in id order.
EmbeddingCheck verify_coarse_embedding(const Graph& domain, const Graph& codomain,
                                       const std::unordered_map<VertexId, VertexId>& f,
                                       const std::function<double(double)>& lower,
                                       const std::function<double(double)>& upper);

}  // namespace cuspedkit
