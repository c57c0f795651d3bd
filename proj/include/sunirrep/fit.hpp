#ifndef SUNIRREP_FIT_HPP
#define SUNIRREP_FIT_HPP

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sunirrep {

/// Least-squares fit of log(error) against L.  The paper-side decay
/// constants are never hard-coded anywhere; this fitted slope is their
/// measurable stand-in.
struct ErrorFitResult {
  std::vector<std::pair<double, double>> points;  // (L, error)
  double slope = 0.0;                             // d ln(error) / dL
  double intercept = 0.0;
  double fit_residual = 0.0;  // RMS of ln-space residuals
  bool floor_limited = false;
};

inline ErrorFitResult fit_log_linear(std::vector<std::pair<double, double>> points,
                                     double floor = 1e-12) {
  ErrorFitResult out;
  out.points = std::move(points);
  out.floor_limited = true;
  for (const auto& [L, err] : out.points)
    if (err >= floor) out.floor_limited = false;
  if (out.points.size() < 3 && !out.floor_limited)
    throw std::domain_error("fit_log_linear: need at least 3 points");
  if (out.points.size() < 2) return out;

  const double n = static_cast<double>(out.points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [L, err] : out.points) {
    const double y = std::log(std::max(err, 1e-300));
    sx += L;
    sy += y;
    sxx += L * L;
    sxy += L * y;
  }
  const double denom = n * sxx - sx * sx;
  out.slope = (n * sxy - sx * sy) / denom;
  out.intercept = (sy - out.slope * sx) / n;
  double ss = 0;
  for (const auto& [L, err] : out.points) {
    const double y = std::log(std::max(err, 1e-300));
    const double d = y - (out.slope * L + out.intercept);
    ss += d * d;
  }
  out.fit_residual = std::sqrt(ss / n);
  return out;
}

}  // namespace sunirrep

#endif
