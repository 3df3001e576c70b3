#include "gabor/window.hpp"

#include <cmath>

namespace gabor {

Window Window::from_samples(cvec samples, std::string label) {
  const double norm = samples.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw ParameterError("window", "samples must be finite and not identically zero");
  samples /= norm;
  return Window(std::move(samples), std::move(label), norm);
}

}  // namespace gabor
