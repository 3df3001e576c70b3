#pragma once

// Window files: one sample per line, "re<TAB>im". Written with 17
// significant digits (or as hexadecimal floats) so reading back is exact.
// Blank lines and lines starting with '#' are ignored on input.

#include <iosfwd>
#include <string>

#include "gabor/types.hpp"

namespace gabor {

enum class FloatFormat { decimal17, hex };

void write_window(std::ostream& out, const cvec& samples, FloatFormat format = FloatFormat::decimal17);
void write_window_file(const std::string& path, const cvec& samples, FloatFormat format = FloatFormat::decimal17);

cvec read_window(std::istream& in);
cvec read_window_file(const std::string& path);

}  // namespace gabor
