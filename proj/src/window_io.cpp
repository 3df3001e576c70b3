#include "gabor/window_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <vector>

namespace gabor {
namespace {

std::string format_double(double v, FloatFormat format) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format == FloatFormat::hex ? "%a" : "%.17g", v);
  return buf;
}

double parse_double(const char*& cursor, std::size_t line) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(cursor, &end);
  if (end == cursor || errno == ERANGE)
    throw ParameterError("window", "malformed sample on line " + std::to_string(line));
  cursor = end;
  return v;
}

}  // namespace

void write_window(std::ostream& out, const cvec& samples, FloatFormat format) {
  for (Eigen::Index i = 0; i < samples.size(); ++i)
    out << format_double(samples[i].real(), format) << '\t' << format_double(samples[i].imag(), format) << '\n';
}

void write_window_file(const std::string& path, const cvec& samples, FloatFormat format) {
  std::ofstream out(path);
  if (!out) throw ParameterError("window", "cannot open '" + path + "' for writing");
  write_window(out, samples, format);
  if (!out) throw ParameterError("window", "write to '" + path + "' failed");
}

cvec read_window(std::istream& in) {
  std::vector<complex_t> values;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    const char* cursor = text.c_str() + first;
    const double re = parse_double(cursor, line);
    const double im = parse_double(cursor, line);
    while (*cursor == ' ' || *cursor == '\t' || *cursor == '\r') ++cursor;
    if (*cursor != '\0') throw ParameterError("window", "trailing characters on line " + std::to_string(line));
    values.emplace_back(re, im);
  }
  cvec out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out[static_cast<Eigen::Index>(i)] = values[i];
  return out;
}

cvec read_window_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("window", "cannot open window file '" + path + "'");
  return read_window(in);
}

}  // namespace gabor
