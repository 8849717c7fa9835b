#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace wordtour::cli {

/// Entry point shared by the binary and the tests. Returns the process exit code.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace wordtour::cli
