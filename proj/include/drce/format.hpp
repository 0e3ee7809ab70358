#pragma once

#include <string>

namespace drce {

/// Locale-independent shortest form with at most 12 significant digits.
std::string format_real(double v);

}  // namespace drce
