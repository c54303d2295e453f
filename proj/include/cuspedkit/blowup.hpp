#pragma once

// Blowup graphs: each support vertex v becomes a cone v * L_v, and cones over
// adjacent support vertices span a complete join.

#include "cuspedkit/graph.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cuspedkit {

struct BlowupData {
    Graph support;
    // Base labels L_v per support vertex, in the order their vertices are created.
    std::map<VertexId, std::vector<std::string>> bases;
};

class BlowupGraph {
 public:
    const Graph& graph() const { return graph_; }
    const Graph& support() const { return data_.support; }
    const BlowupData& data() const { return data_; }

    // The retraction onto the support: apices map to themselves, base vertices to their apex.
    VertexId apex_of(VertexId x) const;
    bool is_apex(VertexId x) const { return apex_of(x) == x; }
    // L_v as vertex ids of the blowup.
    const VertexSet& base_of(VertexId support_vertex) const;
    // {v} ∪ L_v
    VertexSet cone(VertexId support_vertex) const;

    // Built with empty base sets allowed; lemma checkers flag their reports.
    bool tainted() const { return tainted_; }

    // Assembles a blowup with caller-chosen base vertex ids. `base_ids[v]` must have
    // one id per label in data.bases[v]; ids must avoid the support ids.
    static BlowupGraph assemble(BlowupData data, const std::map<VertexId, VertexSet>& base_ids,
                                bool allow_empty_bases = false);

 private:
    BlowupData data_;
    Graph graph_;
    std::map<VertexId, VertexSet> base_ids_;
    std::vector<VertexId> apex_;  // by graph index
    bool tainted_ = false;
};

// Support ids are reused for the apices; base vertices get ids above the largest
// support id, in support order and then label order.
BlowupGraph build_blowup(const BlowupData& data, bool allow_empty_bases = false);

Simplex support_of(const BlowupGraph& x, const Simplex& s);

struct LinkDecomposition {
    VertexSet preimage;                         // p^-1(Lk_support(support of s))
    std::map<VertexId, VertexSet> cone_parts;   // v -> Lk_Cone(v)(s ∩ Cone(v))
};

// Throws LemmaViolation when the pieces do not reassemble into link(x, s).
LinkDecomposition decompose_link(const BlowupGraph& x, const Simplex& s);

enum class SimplexType { Bounded, BlowupType, ConeType };

const char* to_string(SimplexType t);

struct SimplexClassification {
    SimplexType type = SimplexType::Bounded;  // Cone > Blowup > Bounded
    bool cone = false;
    bool blowup = false;
    bool bounded = false;
    std::optional<VertexId> cone_vertex;  // v with link = L_v
};

// Throws InvalidInput for maximal simplices and LemmaViolation if no type applies.
SimplexClassification classify_simplex(const BlowupGraph& x, const Simplex& s);

struct CleanishWitness {
    Simplex sigma, phi, pi, psi;
};

struct CleanishReport {
    bool ok = true;
    std::optional<std::pair<Simplex, Simplex>> counterexample;
    std::size_t simplices = 0;
    std::size_t pairs = 0;
    // Pairs where Π had to properly extend Σ.
    std::size_t proper_extensions = 0;
    std::vector<CleanishWitness> witnesses;  // filled when requested
};

struct CleanishOptions {
    std::size_t max_simplices = 4000;
    bool record_witnesses = false;
    unsigned jobs = 1;
};

// For every ordered pair of simplices (Σ, Φ) searches Π ⊇ Σ and Ψ with
// Lk(Σ) ∩ Lk(Φ) = Lk(Π) * Ψ.
CleanishReport has_cleanish(const Graph& g, const CleanishOptions& opts = {});

// Text format: support graph directives, then `base <support-id> <label>...` lines.
BlowupData read_blowup_data(std::istream& in);
void write_blowup_data(std::ostream& out, const BlowupData& d);

}  // namespace cuspedkit
