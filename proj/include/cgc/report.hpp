#pragma once

#include <string>

#include "cgc/types.hpp"

namespace cgc {

/// Round to 12 significant digits (report determinism contract).
Real round_sig(Real x, int digits = 12);

/// Shortest decimal form of round_sig(x).
std::string format_sig(Real x, int digits = 12);

}  // namespace cgc
