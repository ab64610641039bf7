#include "nhse/numfmt.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace nhse {

std::string format_double(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

double parse_double(std::string_view s) {
    double x = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto r = std::from_chars(first, last, x);
    if (r.ec != std::errc() || r.ptr != last) {
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    }
    return x;
}

}  // namespace nhse
