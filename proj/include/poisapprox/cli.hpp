#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace poisapprox {

/// Runs one subcommand (distances, bounds, expand, verify, compare).
/// Returns 0 on success, 1 when verification finds violations and 2 on
/// usage or input errors, which are reported on `err` as a single line
/// `error: code=<code> message=<text>`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace poisapprox
