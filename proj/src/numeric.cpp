#include "heisgeo/numeric.hpp"

#include <cmath>
#include <numbers>

namespace heisgeo {

double phi_minus_sin(double phi) {
  if (std::abs(phi) >= 0.5) return phi - std::sin(phi);
  // phi^3/3! - phi^5/5! + ...; 12 terms are far below one ulp at |phi| = 0.5
  const double phi2 = phi * phi;
  double term = phi * phi2 / 6.0;
  double sum = term;
  for (int j = 1; j < 12; ++j) {
    term *= -phi2 / static_cast<double>((2 * j + 2) * (2 * j + 3));
    sum += term;
  }
  return sum;
}

double arc_area_ratio(double phi) {
  if (std::abs(phi) < 1e-6) return phi / 12.0 + phi * phi * phi / 360.0;
  const double s = std::sin(0.5 * phi);
  return phi_minus_sin(phi) / (8.0 * s * s);
}

double arc_area_ratio_complement(double eps) {
  const double s = std::sin(0.5 * eps);
  return (2.0 * std::numbers::pi - eps + std::sin(eps)) / (8.0 * s * s);
}

}  // namespace heisgeo
