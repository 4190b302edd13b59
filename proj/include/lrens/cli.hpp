#pragma once

#include <string>
#include <vector>

namespace lrens {

// Entry point of the lrens tool. Returns 0 on success, 1 on usage errors,
// 2 on data/model errors.
int cli_main(int argc, const char* const* argv);

// Convenience overload for in-process callers; args exclude the program name.
int cli_main(const std::vector<std::string>& args);

}  // namespace lrens
