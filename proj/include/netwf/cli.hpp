#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace netwf {

// Command-line entry point. args excludes the program name. Prints a
// JSON summary to `out` on success. Returns 0 on success, 1 on data or
// numeric errors, 2 on usage errors.
int cli_main(const std::vector<std::string>& args, std::ostream& out = std::cout);

}  // namespace netwf
