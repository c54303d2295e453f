#pragma once

// Line-oriented text formats. Every format shares the same lexical rules:
// one directive per line, whitespace separated, '#' starts a comment.
//
//   v <id> [label]      vertex (label is the rest of the line)
//   e <id> <id>         edge; both endpoints must already be declared

#include "cuspedkit/graph.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cuspedkit {

struct Directive {
    std::string keyword;
    std::vector<std::string> args;
    std::string rest;  // raw text after the keyword, trimmed
    std::size_t line = 0;
};

std::vector<Directive> read_directives(std::istream& in);

// Parses a non-negative decimal integer, throwing InvalidInput with the line number.
std::uint64_t parse_unsigned(const std::string& token, std::size_t line);
VertexId parse_vertex_id(const std::string& token, std::size_t line);

// Consumes `v` and `e` directives; the rest are returned untouched in `leftover`.
Graph graph_from_directives(const std::vector<Directive>& ds, std::vector<Directive>* leftover = nullptr);

Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace cuspedkit
