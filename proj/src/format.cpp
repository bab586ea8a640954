#include "treecount/format.hpp"

#include <charconv>
#include <cmath>

namespace treecount {

std::string format_fixed(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "+inf" : "-inf";
  if (value == 0.0) value = 0.0;  // no "-0.0000"
  char buf[128];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  return std::string(buf, ptr);
}

std::string format_report_number(double value) {
  if (std::isnan(value) || std::isinf(value) || std::fabs(value) < 1e6)
    return format_fixed(value, 4);
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 2);
  std::string out(buf, ptr);
  for (auto& c : out)
    if (c == 'e') c = 'E';
  return out;
}

}  // namespace treecount
