#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semimpc::cli {

/// Exit codes: 0 clean, 1 violation or failed bound, 2 usage/config error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semimpc::cli
