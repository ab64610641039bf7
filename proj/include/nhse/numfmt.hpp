#pragma once

#include <string>
#include <string_view>

namespace nhse {

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

// Full-precision parse of the whole string; throws std::invalid_argument otherwise.
double parse_double(std::string_view s);

}  // namespace nhse
