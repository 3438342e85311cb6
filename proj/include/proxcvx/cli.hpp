#pragma once

#include <ostream>

namespace proxcvx {

/// Exit codes: 0 success, certified or pass; 1 refuted, failed or divergent;
/// 2 usage or solver error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace proxcvx
