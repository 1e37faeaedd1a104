#include "conic/format.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "conic/errors.hpp"

namespace conic {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    try {
      out.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse number: '" + cell + "'");
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    try {
      out.push_back(std::stoi(cell));
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse integer: '" + cell + "'");
    }
  }
  return out;
}

}  // namespace conic
