#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ovalkit::cli {

// Full command line including the program name. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ovalkit::cli
