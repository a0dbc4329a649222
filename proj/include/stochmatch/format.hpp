#ifndef STOCHMATCH_FORMAT_HPP
#define STOCHMATCH_FORMAT_HPP

#include <string>

namespace stochmatch {

/// Shortest decimal that parses back to exactly `x`.
std::string shortest_decimal(double x);

/// Shortest round-trip decimal, zero-padded to at least 12 significant
/// digits. Zero prints as "0".
std::string report_decimal(double x);

}  // namespace stochmatch

#endif  // STOCHMATCH_FORMAT_HPP
