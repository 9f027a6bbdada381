#pragma once

#include <string>
#include <string_view>

namespace notchlab {

/// Parses an engineering-notation quantity such as "0.83GHz", "2.2pF",
/// "50" or "37.66nH" into SI units. Prefixes G/M/k/m/u/n/p/f are
/// case-sensitive. The unit suffix, when present, must match `unit`
/// (empty `unit` means a bare number is expected). "Ohm"/"ohm" are
/// accepted for resistance.
double parse_quantity(std::string_view text, std::string_view unit);

/// Formats a value in engineering notation with an SI prefix, e.g.
/// format_quantity(3.766e-8, "H") -> "37.66 nH".
std::string format_quantity(double value, std::string_view unit, int significant = 5);

} // namespace notchlab
