#pragma once

#include <string>

namespace treecount {

/// Fixed-point with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

/// Report number: "2.20E+21" style (3 significant digits) when |value| >= 1e6,
/// otherwise fixed with 4 decimals. Infinity prints as "+inf"/"-inf".
std::string format_report_number(double value);

}  // namespace treecount
