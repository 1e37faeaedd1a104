#pragma once

#include <string>
#include <vector>

namespace conic {

// Shortest round-trip decimal form (std::to_chars); "inf"/"nan" spelled out.
std::string format_double(double v);

// Comma-joined format_double values.
std::string format_list(const std::vector<double>& v);

// Parses "1,2,5.5" style lists.
std::vector<double> parse_double_list(const std::string& s);
std::vector<int> parse_int_list(const std::string& s);

}  // namespace conic
