#ifndef SUNIRREP_COMMON_HPP
#define SUNIRREP_COMMON_HPP

#include <charconv>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sunirrep {

inline constexpr const char* kVersion = "0.1.0";

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Thrown when an iterative solver fails to reach its tolerance; carries the
/// residual that was achieved.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double achieved)
      : std::runtime_error(what), residual_(achieved) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Thrown when a request exceeds a configured dimension or memory cap.
class resource_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal representation of a double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace sunirrep

#endif
