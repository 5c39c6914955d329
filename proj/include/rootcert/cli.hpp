#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rootcert::cli {

// Executes one invocation; argv excludes the program name.
// Exit codes: 0 success/Converged/Certified, 2 Refuted or non-convergent,
// 3 Unknown, 4 usage error, 5 domain/evaluation error.
int run(const std::vector<std::string>& argv, std::ostream& out,
        std::ostream& err);

}  // namespace rootcert::cli
