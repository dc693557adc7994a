#pragma once

#include <string>
#include <string_view>

namespace bbqaoa {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// Whole-string parse; throws ArgumentError on trailing junk or overflow.
double parse_double(std::string_view text);

}  // namespace bbqaoa
