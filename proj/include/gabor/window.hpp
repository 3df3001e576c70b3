#pragma once

#include <string>

#include "gabor/types.hpp"

namespace gabor {

/// Unit-norm analysis window. The norm of the samples it was built from is
/// kept in `original_norm()`; every bound reported by the library refers to
/// the normalized samples.
class Window {
public:
  /// Normalizes `samples`. Throws ParameterError if they are all zero.
  static Window from_samples(cvec samples, std::string label);

  const cvec& samples() const noexcept { return samples_; }
  const std::string& label() const noexcept { return label_; }
  double original_norm() const noexcept { return original_norm_; }
  Eigen::Index length() const noexcept { return samples_.size(); }

private:
  Window(cvec samples, std::string label, double original_norm)
      : samples_(std::move(samples)), label_(std::move(label)), original_norm_(original_norm) {}

  cvec samples_;
  std::string label_;
  double original_norm_;
};

}  // namespace gabor
