#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rrm::cli {

// args[0] is the program name. Returns 0 on success, 1 on a validation
// failure and 2 on an I/O failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rrm::cli
