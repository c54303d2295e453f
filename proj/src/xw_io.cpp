#include "cuspedkit/xw_io.hpp"

#include "cuspedkit/errors.hpp"

#include <istream>
#include <ostream>
#include <set>

namespace cuspedkit {

namespace {

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

XWPair xw_from_directives(const std::vector<Directive>& ds) {
    std::vector<Directive> rest;
    Graph x = graph_from_directives(ds, &rest);

    std::map<VertexId, VertexSet> cones;
    std::vector<Simplex> listed;
    bool have_wsimp = false;
    std::vector<WEdge> wedges;
    for (const auto& d : rest) {
        if (d.keyword == "cone") {
            if (d.args.empty()) throw InvalidInput(at_line(d.line) + "cone needs an apex id");
            const VertexId apex = parse_vertex_id(d.args[0], d.line);
            if (cones.contains(apex)) throw InvalidInput(at_line(d.line) + "repeated cone line");
            VertexSet& base = cones[apex];
            for (std::size_t i = 1; i < d.args.size(); ++i) base.push_back(parse_vertex_id(d.args[i], d.line));
        } else if (d.keyword == "wsimp") {
            have_wsimp = true;
            std::vector<VertexId> vs;
            for (const auto& a : d.args) vs.push_back(parse_vertex_id(a, d.line));
            try {
                listed.emplace_back(std::move(vs));
            } catch (const InvalidInput& e) {
                throw InvalidInput(at_line(d.line) + e.what());
            }
        } else if (d.keyword == "wedge") {
            if (d.args.size() != 2) throw InvalidInput(at_line(d.line) + "wedge needs two indices");
            wedges.emplace_back(parse_unsigned(d.args[0], d.line), parse_unsigned(d.args[1], d.line));
        } else {
            throw InvalidInput(at_line(d.line) + "unknown directive '" + d.keyword + "'");
        }
    }

    std::vector<Simplex> maxsimps = maximal_simplices(x);
    if (have_wsimp && listed != maxsimps)
        throw InvalidInput("wsimp lines do not match the maximal simplices of the graph");

    std::optional<BlowupGraph> blowup;
    if (!cones.empty()) {
        GraphBuilder sb;
        std::set<VertexId> covered;
        BlowupData data;
        std::map<VertexId, VertexSet> base_ids;
        for (const auto& [apex, base] : cones) {
            if (!x.contains(apex)) throw InvalidInput("cone apex " + std::to_string(apex) + " is not a vertex");
            sb.add_vertex(apex, x.label(apex));
            std::vector<std::string> labels;
            for (VertexId b : base) {
                if (!x.contains(b)) throw InvalidInput("cone base vertex " + std::to_string(b) + " is not a vertex");
                labels.push_back(x.label(b));
            }
            data.bases[apex] = std::move(labels);
            base_ids[apex] = base;
        }
        for (const auto& [apex, base] : cones) {
            for (VertexId v : base)
                if (!covered.insert(v).second) throw InvalidInput("vertex " + std::to_string(v) + " in two cones");
            if (!covered.insert(apex).second) throw InvalidInput("vertex " + std::to_string(apex) + " in two cones");
        }
        if (covered.size() != x.order()) throw InvalidInput("cone lines do not cover every vertex");
        for (const auto& [a, b] : x.edges())
            if (cones.contains(a) && cones.contains(b)) sb.add_edge(a, b);
        data.support = std::move(sb).build();
        BlowupGraph bg = BlowupGraph::assemble(std::move(data), base_ids, true);
        if (bg.graph().edges() != x.edges()) throw InvalidInput("graph is not the blowup described by its cone lines");
        blowup = std::move(bg);
    }
    return XWPair::from_parts(std::move(x), std::move(blowup), std::move(maxsimps), wedges);
}

XWPair read_xw(std::istream& in) { return xw_from_directives(read_directives(in)); }

void write_xw(std::ostream& out, const XWPair& p) {
    write_graph(out, p.x());
    if (const BlowupGraph* b = p.blowup()) {
        for (VertexId v : b->support().vertices()) {
            out << "cone " << v;
            for (VertexId q : b->base_of(v)) out << ' ' << q;
            out << '\n';
        }
    }
    for (const Simplex& s : p.maxsimps()) {
        out << "wsimp";
        for (VertexId v : s.vertices()) out << ' ' << v;
        out << '\n';
    }
    for (const auto& [a, b] : p.wedges()) out << "wedge " << a << ' ' << b << '\n';
}

}  // namespace cuspedkit
