#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stmod {

/// Exit codes: 0 all checks passed, 1 a verification failed, 2 bad input or usage.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace stmod
