#ifndef HELMCONTROL_TYPES_HPP
#define HELMCONTROL_TYPES_HPP

#include <Eigen/Core>
#include <complex>
#include <stdexcept>
#include <string>

namespace helm {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

// Reference power level for dB reporting, in watts.
inline constexpr double kPowerReferenceWatts = 1e-12;

/// Geometric constraint broken (overlapping regions, point inside source, ...).
class GeometryViolation : public std::runtime_error {
 public:
  explicit GeometryViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Kernel evaluated at (or too near) its singularity.
class SingularKernel : public std::runtime_error {
 public:
  explicit SingularKernel(const std::string& what) : std::runtime_error(what) {}
};

/// A numeric stage produced non-finite values or a factorization failed.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario / config file is malformed or inconsistent.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace helm

#endif  // HELMCONTROL_TYPES_HPP
