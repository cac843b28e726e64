#pragma once

#include <string>
#include <vector>

namespace collabmap {

// Full pipeline driver. args excludes the program name. Exit codes:
// 0 success, 1 pipeline failure (e.g. an indicator undefined on the data),
// 2 usage or file errors.
int run_cli(const std::vector<std::string>& args);

} // namespace collabmap
