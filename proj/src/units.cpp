#include "notchlab/units.hpp"

#include "notchlab/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace notchlab {

namespace {

bool unit_matches(std::string_view tail, std::string_view unit) {
    if (tail == unit) return true;
    // Resistance is commonly spelled out.
    if (unit == "Ohm") return tail == "Ohm" || tail == "ohm" || tail == "R";
    return false;
}

} // namespace

double parse_quantity(std::string_view text, std::string_view unit) {
    // Strip surrounding whitespace.
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text.empty())
        throw parse_error("empty quantity");

    double mantissa = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, mantissa);
    if (ec != std::errc{} || ptr == begin)
        throw parse_error("malformed quantity '" + std::string(text) + "'");

    std::string_view tail(ptr, static_cast<size_t>(end - ptr));
    while (!tail.empty() && std::isspace(static_cast<unsigned char>(tail.front())))
        tail.remove_prefix(1);

    if (tail.empty())
        return mantissa; // bare number, SI units assumed

    double scale = 1.0;
    // A single leading prefix character, case-sensitive. Only consumed when
    // what remains is the expected unit; this keeps "m" in "mHz" a prefix
    // while leaving the "M" of "MHz" unambiguous.
    if (tail.size() > unit.size() || (unit.empty() && !tail.empty())) {
        switch (tail.front()) {
        case 'G': scale = 1e9;   break;
        case 'M': scale = 1e6;   break;
        case 'k': scale = 1e3;   break;
        case 'm': scale = 1e-3;  break;
        case 'u': scale = 1e-6;  break;
        case 'n': scale = 1e-9;  break;
        case 'p': scale = 1e-12; break;
        case 'f': scale = 1e-15; break;
        default:  scale = 0.0;   break;
        }
        if (scale != 0.0)
            tail.remove_prefix(1);
        else
            scale = 1.0;
    }

    if (!unit_matches(tail, unit))
        throw parse_error("expected a quantity in " + std::string(unit) +
                          ", got '" + std::string(text) + "'");
    return mantissa * scale;
}

std::string format_quantity(double value, std::string_view unit, int significant) {
    static constexpr struct { double scale; const char* prefix; } steps[] = {
        {1e9, "G"}, {1e6, "M"}, {1e3, "k"}, {1.0, ""},
        {1e-3, "m"}, {1e-6, "u"}, {1e-9, "n"}, {1e-12, "p"}, {1e-15, "f"},
    };

    if (value == 0.0)
        return "0 " + std::string(unit);

    const double mag = std::fabs(value);
    double scale = 1e-15;
    const char* prefix = "f";
    for (const auto& s : steps) {
        if (mag >= s.scale * 0.9999999999) {
            scale = s.scale;
            prefix = s.prefix;
            break;
        }
    }

    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, value / scale);
    return std::string(buf) + " " + prefix + std::string(unit);
}

} // namespace notchlab
