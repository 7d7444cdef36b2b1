#ifndef ESLI_TOOLS_CLI_HPP_
#define ESLI_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace esli::cli {

  //! Exit codes of the esli tool.
  inline constexpr int exit_pass    = 0;
  inline constexpr int exit_verdict = 1;
  inline constexpr int exit_usage   = 2;

  //! Runs the tool on args (args[0] is the program name). The JSON report goes
  //! to out, diagnostics to err.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace esli::cli

#endif  // ESLI_TOOLS_CLI_HPP_
