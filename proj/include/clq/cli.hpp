// Command-line front end. Exit 0 on success, 1 on a failed check, 2 on bad usage.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace clq {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clq
