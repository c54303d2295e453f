#include "cuspedkit/graph_io.hpp"

#include "cuspedkit/errors.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace cuspedkit {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::vector<Directive> read_directives(std::istream& in) {
    std::vector<Directive> out;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string text = trim(raw);
        if (text.empty()) continue;
        Directive d;
        d.line = line;
        std::istringstream tokens(text);
        tokens >> d.keyword;
        for (std::string t; tokens >> t;) d.args.push_back(t);
        d.rest = trim(std::string_view(text).substr(d.keyword.size()));
        out.push_back(std::move(d));
    }
    return out;
}

std::uint64_t parse_unsigned(const std::string& token, std::size_t line) {
    std::uint64_t value = 0;
    const char* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end || token.empty())
        throw InvalidInput("line " + std::to_string(line) + ": expected a non-negative integer, got '" + token + "'");
    return value;
}

VertexId parse_vertex_id(const std::string& token, std::size_t line) {
    const std::uint64_t v = parse_unsigned(token, line);
    if (v > 0xfffffffeULL) throw InvalidInput("line " + std::to_string(line) + ": vertex id out of range");
    return static_cast<VertexId>(v);
}

Graph graph_from_directives(const std::vector<Directive>& ds, std::vector<Directive>* leftover) {
    GraphBuilder b;
    for (const auto& d : ds) {
        try {
            if (d.keyword == "v") {
                if (d.args.empty()) throw InvalidInput("vertex directive needs an id");
                const VertexId id = parse_vertex_id(d.args[0], d.line);
                std::string label = trim(std::string_view(d.rest).substr(d.args[0].size()));
                b.add_vertex(id, std::move(label));
            } else if (d.keyword == "e") {
                if (d.args.size() != 2) throw InvalidInput("edge directive needs exactly two ids");
                b.add_edge(parse_vertex_id(d.args[0], d.line), parse_vertex_id(d.args[1], d.line));
            } else if (leftover) {
                leftover->push_back(d);
            } else {
                throw InvalidInput("unknown directive '" + d.keyword + "'");
            }
        } catch (const InvalidInput& e) {
            const std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0) throw;
            throw InvalidInput("line " + std::to_string(d.line) + ": " + msg);
        }
    }
    return std::move(b).build();
}

Graph read_graph(std::istream& in) { return graph_from_directives(read_directives(in)); }

void write_graph(std::ostream& out, const Graph& g) {
    for (VertexId v : g.vertices()) {
        out << "v " << v;
        if (!g.label(v).empty()) out << ' ' << g.label(v);
        out << '\n';
    }
    for (const auto& [a, b] : g.edges()) out << "e " << a << ' ' << b << '\n';
}

}  // namespace cuspedkit
