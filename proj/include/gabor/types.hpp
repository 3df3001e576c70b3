#pragma once

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gabor {

using complex_t = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;

// Exceptions. Everything thrown by the library derives from gabor::Error.

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Vector or matrix dimensions do not match the finite model / lattice.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// A lattice or window parameter is invalid. `field()` names the offending parameter.
class ParameterError : public Error {
public:
  ParameterError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// A numerical operation needed an invertible operator and did not get one.
/// Carries the measured smallest and largest singular values.
class SingularError : public Error {
  static std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
  }

public:
  SingularError(const std::string& what, double sigma_min, double sigma_max)
      : Error(what + " (sigma_min=" + sci(sigma_min) + ", sigma_max=" + sci(sigma_max) + ")"),
        sigma_min_(sigma_min), sigma_max_(sigma_max) {}
  double sigma_min() const noexcept { return sigma_min_; }
  double sigma_max() const noexcept { return sigma_max_; }

private:
  double sigma_min_;
  double sigma_max_;
};

/// twisted_invert on a non-invertible element.
class SingularAlgebraError : public SingularError {
public:
  using SingularError::SingularError;
};

/// wexler_raz_dual on a system that is not a frame.
class NotAFrameError : public SingularError {
public:
  using SingularError::SingularError;
};

/// index_commutative on a lattice whose shifts do not commute.
class NonCommutativeLatticeError : public Error {
public:
  using Error::Error;
};

/// Requested explicit matrix would exceed the memory guard.
class SizeLimitError : public Error {
public:
  using Error::Error;
};

}  // namespace gabor
