#pragma once

// Text format for (X, W) pairs:
//
//   v / e lines           the graph X
//   cone <apex> <base>... optional; marks X as a blowup (one line per support vertex)
//   wsimp <v> <v> ...     maximal simplices in canonical order (checked against X)
//   wedge <i> <j>         W-edge between maximal simplices i and j

#include "cuspedkit/chhs.hpp"
#include "cuspedkit/graph_io.hpp"

#include <iosfwd>
#include <vector>

namespace cuspedkit {

XWPair xw_from_directives(const std::vector<Directive>& ds);
XWPair read_xw(std::istream& in);
void write_xw(std::ostream& out, const XWPair& p);

}  // namespace cuspedkit
