#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ksmooth {

// Arguments exclude the program name. Exit codes: 0 success, 1 a property or
// claim was violated, 2 bad input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ksmooth
