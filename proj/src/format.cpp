#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "qaffine/report.hpp"

namespace qaffine {

std::string format_double(double v) {
  if (v == 0.0 && std::signbit(v)) return "-0.0";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_complex(Complex z) {
  std::string out = format_double(z.real());
  const std::string im = format_double(z.imag());
  if (im.front() != '-') out += '+';
  out += im;
  out += 'i';
  return out;
}

}  // namespace qaffine
