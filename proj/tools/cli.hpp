#pragma once

#include <ostream>

namespace frachardy::cli {

// Exit codes: 0 all verdicts hold and every quadrature converged,
// 1 a verdict was violated or a computation did not converge,
// 2 invalid parameters or flags.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frachardy::cli
