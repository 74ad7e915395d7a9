#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace confl {

/// Command-line front end. First output line is exactly YES, NO, or MAYBE;
/// --proof appends a replayable certificate, --json a machine-readable object.
/// Returns 0 after any verdict, 1 on input errors, 2 on internal errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace confl
