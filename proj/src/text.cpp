#include "bbqaoa/text.hpp"

#include <charconv>
#include <system_error>

#include "bbqaoa/errors.hpp"

namespace bbqaoa {

std::string format_double(double value)
{
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

double parse_double(std::string_view text)
{
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    const auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc() || result.ptr != last || text.empty()) {
        throw ArgumentError("not a number: \"" + std::string(text) + "\"");
    }
    return value;
}

}  // namespace bbqaoa
