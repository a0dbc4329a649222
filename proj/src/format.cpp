#include "stochmatch/format.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace stochmatch {

namespace {

int significant_digits(const std::string& s) {
    int count = 0;
    bool leading = true;
    for (char c : s) {
        if (c == 'e' || c == 'E') break;
        if (!std::isdigit(static_cast<unsigned char>(c))) continue;
        if (leading && c == '0') continue;
        leading = false;
        ++count;
    }
    return count;
}

}  // namespace

std::string shortest_decimal(double x) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    (void)ec;
    return std::string(buf.data(), end);
}

std::string report_decimal(double x) {
    if (x == 0.0) return "0";
    std::string s = shortest_decimal(x);
    if (significant_digits(s) >= 12) return s;
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%#.12g", x);
    return buf.data();
}

}  // namespace stochmatch
