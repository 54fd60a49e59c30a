#pragma once

namespace heisgeo {

/// phi - sin(phi) without cancellation for small |phi|.
double phi_minus_sin(double phi);

/// (phi - sin phi) / (8 sin^2(phi/2)): the balayage area of a circular arc of
/// turning angle phi divided by its squared chord. Odd, strictly increasing on
/// (-2pi, 2pi), 0 at 0.
double arc_area_ratio(double phi);

/// Same ratio written in terms of the complement eps = 2pi - phi, eps in (0, 2pi).
double arc_area_ratio_complement(double eps);

}  // namespace heisgeo
