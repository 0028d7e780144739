#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace g2forge {

/// Entry point shared by the g2forge binary and the test-suite; returns the
/// process exit code (0 pass, 1 check failure, 2 usage or I/O error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace g2forge
