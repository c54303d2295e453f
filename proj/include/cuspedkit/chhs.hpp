#pragma once

// Pairs (X, W) where W is a graph on the maximal simplices of X, and the
// calculus built on them: domain classes, saturations, augmented links,
// relations, projections and the five-axiom checker.

#include "cuspedkit/blowup.hpp"
#include "cuspedkit/graph.hpp"
#include "cuspedkit/hyperbolicity.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cuspedkit {

using WEdge = std::pair<std::size_t, std::size_t>;

class XWPair {
 public:
    XWPair();
    // Maximal simplices are recomputed from x; W-edges index into that list.
    XWPair(Graph x, const std::vector<WEdge>& wedges);
    XWPair(BlowupGraph x, const std::vector<WEdge>& wedges);

    // Skips the clique search; `maxsimps` must already be maximal_simplices(x).
    static XWPair from_parts(Graph x, std::optional<BlowupGraph> blowup, std::vector<Simplex> maxsimps,
                             const std::vector<WEdge>& wedges);

    const Graph& x() const;
    const BlowupGraph* blowup() const;
    const std::vector<Simplex>& maxsimps() const;
    // Vertex i is maxsimps()[i].
    const Graph& w() const;
    std::vector<WEdge> wedges() const;
    std::optional<std::size_t> find_maxsimp(const Simplex& s) const;
    // Indices of maximal simplices containing vertex v.
    const std::vector<std::size_t>& maxsimps_containing(VertexId v) const;

    // X plus complete joins between W-adjacent maximal simplices.
    const Graph& augmented() const;

    XWPair with_wedges(const std::vector<WEdge>& wedges) const;

    struct Data;
    const Data& data() const { return *d_; }

 private:
    explicit XWPair(std::shared_ptr<Data> d) : d_(std::move(d)) {}
    std::shared_ptr<Data> d_;
};

struct DomainClass {
    Simplex representative;  // lexicographically smallest member
    VertexSet link_set;
    VertexSet saturation;  // union of all members
};

// One class per distinct non-empty link, sorted by link_set.
const std::vector<DomainClass>& domain_classes(const XWPair& p);

// Index into domain_classes(p) of the class of a non-maximal simplex.
std::size_t class_of(const XWPair& p, const Simplex& s);
std::optional<std::size_t> class_with_link(const XWPair& p, const VertexSet& link_set);

// Every simplex whose link is c.link_set.
std::vector<Simplex> members(const XWPair& p, const DomainClass& c);

// Throws InvalidInput for maximal simplices.
VertexSet saturation(const XWPair& p, const Simplex& s);

// Longest strict chain of links Lk(Δ1) ⊊ ... ⊊ Lk(Δk), counting the empty
// link of maximal simplices.
std::uint32_t complexity(const XWPair& p);

struct DomainGeometry {
    Graph y;  // augmented graph minus the saturation
    Graph c;  // augmented link: Y induced on the link set
};

DomainGeometry geometry(const XWPair& p, const DomainClass& c);
Graph augmented_graph(const XWPair& p);
Graph y_graph(const XWPair& p, const DomainClass& c);
Graph augmented_link(const XWPair& p, const DomainClass& c);

enum class Relation { Equal, NestedIn, Contains, Orthogonal, Transverse };
const char* to_string(Relation r);

// NestedIn: c1 is properly nested in c2.
Relation relation(const XWPair& p, const DomainClass& c1, const DomainClass& c2);

// Coarse closest-point projection with +1 slack: all y in C with
// d_Y(x, y) <= d_Y(x, C) + 1 for some x in `sources`.
VertexSet closest_points(const DomainGeometry& g, const VertexSet& sources);

// π(w) for the maximal simplex with index w. Throws LemmaViolation when w misses Y.
VertexSet project_pi(const XWPair& p, const DomainClass& c, std::size_t w);
VertexSet project_pi(const XWPair& p, const DomainGeometry& g, std::size_t w);

struct RhoSet {
    VertexSet points;
    bool source_empty = false;  // Sat(from) ∩ Y_to was empty
    Distance diameter;          // in C(to)
};

// ρ from `from` to `to`; requires `from` transverse to or properly nested in `to`.
RhoSet rho_set(const XWPair& p, const DomainClass& from, const DomainClass& to);

// Requires small properly nested in big and v a vertex of C(big).
VertexSet rho_map(const XWPair& p, const DomainClass& big, const DomainClass& small, VertexId v);

struct CoordinateDistance {
    Distance min;  // smallest distance between the two projections
    Distance diam_first;
    Distance diam_second;
};

CoordinateDistance coordinate_distance(const XWPair& p, const DomainClass& c, std::size_t w1, std::size_t w2);

enum class Verdict { Pass, Fail, Vacuous, NotApplicable, Inconclusive };
const char* to_string(Verdict v);

struct AxiomOptions {
    std::optional<double> delta_claim;
    std::optional<std::uint32_t> complexity_claim;
    // Exempts classes of cone type from the hyperbolicity axiom; needs a blowup.
    bool relative = false;
    std::size_t max_classes = 20000;
    std::size_t max_link_vertices = 1500;
    unsigned jobs = 1;
};

struct AxiomResult {
    Verdict verdict = Verdict::Pass;
    std::string detail;
};

struct Axiom4Witness {
    std::size_t delta_class = 0, sigma_class = 0;
};

struct Axiom5Witness {
    std::size_t class_index = 0;
    Simplex delta;
    VertexId v = 0, w = 0;
};

struct AxiomReport {
    std::uint32_t complexity_n = 0;
    double delta = 0;  // constant the verdicts were measured against
    std::vector<bool> cone_type;  // per class, relative mode only
    std::vector<std::optional<DeltaReport>> per_domain_delta;  // empty when exempt
    std::vector<DistortionReport> per_domain_distortion;
    std::array<AxiomResult, 5> axioms;

    bool axiom4_ok = true;
    bool axiom4_needed_extension = false;
    std::optional<Axiom4Witness> axiom4_witness;
    bool axiom5_ok = true;
    std::optional<Axiom5Witness> axiom5_witness;

    bool ok() const;
};

// Without a delta claim the constant is max(1, measured δ, measured distortion).
AxiomReport check_axioms(const XWPair& p, const AxiomOptions& opts = {});

}  // namespace cuspedkit
