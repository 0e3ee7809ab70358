#include "drce/format.hpp"

#include <array>
#include <charconv>

namespace drce {

std::string format_real(double v) {
  if (v == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 12);
  return std::string(buf.data(), res.ptr);
}

}  // namespace drce
