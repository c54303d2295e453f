#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cuspedkit {

// Exit status: 0 success, 1 a check failed, 2 usage or input error, 3 internal lemma violation.
// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cuspedkit
