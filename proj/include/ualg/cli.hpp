#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ualg::cli {

  enum ExitCode : int {
    exit_ok      = 0,  // every check held
    exit_failure = 1,  // some theorem-instance check failed
    exit_usage   = 2,  // bad command line
    exit_input   = 3,  // unreadable or invalid input
  };

  //! One invocation of the `ualg` front end. \p args excludes the program
  //! name. Reports go to \p out, diagnostics to \p err.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace ualg::cli
