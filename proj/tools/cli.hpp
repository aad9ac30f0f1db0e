#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coxcli {

enum Exit { ok = 0, config_error = 2, cap_exceeded = 3, internal_error = 4 };

// Runs one coxdual command; the summary line goes to out, notices and errors to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

}  // namespace coxcli
