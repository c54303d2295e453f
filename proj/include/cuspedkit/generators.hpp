#pragma once

// Instance families: the free group F2 = <a, b> relative to <a>, random
// blowups, and a few structured base graphs.

#include "cuspedkit/chhs.hpp"
#include "cuspedkit/cusped.hpp"
#include "cuspedkit/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cuspedkit {

struct RelHypInstance {
    std::uint32_t radius = 0;
    std::uint32_t margin = 0;
    // Reduced words of length <= radius in shortlex order over a < A < b < B;
    // the vertex id of a word is its position in that order.
    Graph ball;
    std::vector<std::string> words;
    // Coset traces g<a> ∩ ball, each ordered by the exponent of a.
    std::vector<VertexSet> cosets;
    std::vector<VertexId> coset_apex;  // support vertex of each coset
    std::vector<std::size_t> coset_of;  // by ball id
    std::vector<int> exponent;         // k with word = g a^k
    VertexSet inner;                   // words of length <= radius - margin
    XWPair xw;

    // By maximal simplex index of xw: true when its ball vertex is inner.
    std::vector<bool> inner_mask() const;
};

// Requires radius >= 2 and 1 <= margin < radius.
RelHypInstance gen_relhyp(std::uint32_t radius, std::uint32_t margin = 1);

// The ball with a horoball glued along every coset trace, built from the
// exponents alone. Depth-0 ids are ball ids; (x, n) gets id N + (n-1) N + x.
Graph gen_augmented_direct(const RelHypInstance& inst, std::uint32_t cap);

struct IsoCheck {
    bool ok = true;
    std::string detail;
};

// Compares the cusped space of inst.xw (or of `mutated`, a pair on the same X)
// with gen_augmented_direct under (gP, x^n) <-> (x, n).
IsoCheck check_augmented_iso(const RelHypInstance& inst, std::uint32_t cap, const XWPair* mutated = nullptr);

// Triangle- and square-free support: a random tree plus chords that keep the girth >= 5.
Graph gen_girth5_support(std::uint64_t seed, std::size_t size);

// Bases of 1..base_max fresh labels per support vertex; W-edges between maximal
// simplices that differ in a single base point, each kept with probability density.
XWPair random_blowup_over(const Graph& support, std::uint64_t seed, std::size_t base_max, double w_density);
XWPair gen_random_blowup(std::uint64_t seed, std::size_t support_size, std::size_t base_max, double w_density);

enum class FamilyKind { Path, Cycle, Grid, Quasiline };
FamilyKind parse_family_kind(const std::string& name);

// path(n), cycle(n) (n >= 3), n×n grid, and a path with distance-2 chords.
Graph gen_family(FamilyKind kind, std::size_t size);

// Erdős–Rényi G(n, p).
Graph gen_gnp(std::size_t n, double p, std::uint64_t seed);

}  // namespace cuspedkit
