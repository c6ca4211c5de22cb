// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gentrig {

/// Run the command-line front end.  Exit status: 0 when all asserted cells
/// hold, 1 on any failing cell, 2 on usage errors, 3 when inconclusive cells
/// exist but none fail.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gentrig
