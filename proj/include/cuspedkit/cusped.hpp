#pragma once

// Cusped spaces: every base L_v of a blowup is replaced by L_v × {0..cap}, and
// maximal simplices are joined by cusp-type edges (one coordinate moves along
// an edge of the horoball over C(Δ_v)) and W-type edges (equal positive-depth
// part, W-adjacent shadows).

#include "cuspedkit/chhs.hpp"
#include "cuspedkit/graph_io.hpp"
#include "cuspedkit/horoball.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cuspedkit {

inline constexpr std::size_t kDefaultCuspedBudget = 200'000;

// CUSPEDKIT_BUDGET overrides the default when set to a positive integer.
std::size_t default_cusped_budget();

struct CuspedOptions {
    std::optional<std::uint32_t> cap;  // auto when empty
    std::size_t budget = default_cusped_budget();  // maximal simplices of X̂
    // Accept caps below auto_cusped_cap. The graphs are still well defined, but
    // the distance checkers assume the floor.
    bool allow_shallow = false;
};

class CuspedPair {
 public:
    const XWPair& source() const { return source_; }
    const XWPair& what() const { return what_; }
    const BlowupGraph& xhat() const { return *what_.blowup(); }
    std::uint32_t cap() const { return cap_; }

    VertexId down_of(VertexId v) const { return down_[what_.x().require_index(v)]; }
    std::uint32_t depth_of(VertexId v) const { return depth_[what_.x().require_index(v)]; }
    // The X̂ vertex (p, n) for a base vertex p of X; apices only at depth 0.
    VertexId lift(VertexId p, std::uint32_t depth) const;
    // Largest coordinate depth of a maximal simplex of X̂.
    std::uint32_t simplex_depth(std::size_t index) const;

    // C(Δ_v) of the source, per support vertex with a non-empty base.
    const std::map<VertexId, Graph>& cone_links() const { return cone_links_; }

 private:
    friend CuspedPair build_cusped(const XWPair& p, const CuspedOptions& opts);

    XWPair source_;
    XWPair what_;
    std::uint32_t cap_ = 0;
    std::vector<VertexId> down_;        // by X̂ index
    std::vector<std::uint32_t> depth_;  // by X̂ index
    std::unordered_map<VertexId, std::vector<VertexId>> lift_;
    std::map<VertexId, Graph> cone_links_;
};

// max over v of default_cap(C(Δ_v)).
std::uint32_t auto_cusped_cap(const XWPair& p);

// Throws InvalidInput when X is not a blowup or the cap is below auto_cusped_cap
// (unless allow_shallow),
// SizeGuardExceeded when X̂ has more maximal simplices than the budget.
CuspedPair build_cusped(const XWPair& p, const CuspedOptions& opts = {});

// max { n >= 0 : n 2^n <= t }
std::uint32_t m_inverse(std::uint64_t t);

struct CheckResult {
    Verdict verdict = Verdict::Pass;
    std::string detail;

    bool passed() const { return verdict != Verdict::Fail; }
};

CheckResult check_links_lemma(const CuspedPair& c, std::size_t max_simplices = 1'000'000);
CheckResult check_nesting_correspondence(const CuspedPair& c, std::size_t max_simplices = 1'000'000);

struct ConeLinkCheck {
    CheckResult overall;
    std::map<VertexId, bool> per_vertex;
};

ConeLinkCheck check_cone_link_is_horoball(const CuspedPair& c);
CheckResult check_duaug_embedding(const CuspedPair& c);

// Pairs of source W-vertices; `inner` (by source maximal simplex index) restricts
// both endpoints when given. Pairs whose Ŵ distance may be shortened by vertices
// below the truncation are reported as INCONCLUSIVE rather than passed.
CheckResult check_w_coarse_embedding(const CuspedPair& c, const std::vector<bool>* inner = nullptr);

CheckResult check_depth_difference(const CuspedPair& c);

struct QiMeasurement {
    std::size_t class_index = 0;  // into domain_classes(source)
    Simplex sigma;
    std::optional<std::uint32_t> twice_forward;   // d_Ĉ <= K d_C + K, doubled
    std::optional<std::uint32_t> twice_backward;  // d_C <= K d_Ĉ + K, doubled
    Distance density;                             // every Ĉ vertex within this of C
    bool ok = false;
};

struct QiCheck {
    CheckResult overall;
    std::vector<QiMeasurement> classes;
};

// Blowup-type classes with non-empty support; NotApplicable when there are none.
QiCheck check_blowup_type_2qi(const CuspedPair& c);

// `cusped <cap>`, the source pair, `---`, then the cusped pair.
void write_cusped_bundle(std::ostream& out, const CuspedPair& c);
// Rebuilds from the source and rejects a cusped section that does not match.
CuspedPair read_cusped_bundle(std::istream& in, std::size_t budget = default_cusped_budget());
bool is_cusped_bundle(const std::vector<Directive>& ds);
CuspedPair cusped_from_directives(const std::vector<Directive>& ds, std::size_t budget);

}  // namespace cuspedkit
