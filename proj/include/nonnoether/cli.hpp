#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nonnoether/system_spec.hpp"

namespace nonnoether {

/// Exit codes: 0 all gates within tolerance, 2 a gate failed, 1 usage or
/// parse error. Reports go to --out, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Catalog name or path to a spec file.
SystemSpecDocument resolve_system(const std::string& name_or_path);

}  // namespace nonnoether
