#pragma once

#include <stdexcept>
#include <string>

namespace liechannel {

/// Numerical thresholds shared by all geometric predicates.
struct Tolerances {
  double contact = 1e-9;  // |(a,b)| relative to |a|·|b| (auxiliary norms)
  double rank = 1e-8;     // singular value cutoff, relative to the largest
  double sig = 1e-8;      // Gram eigenvalues below this count as null
  double residual = 1e-8; // membership / agreement residuals
  double spherical = 1e-6; // nowhere-spherical cutoff for 9-point stars
};

/// Process-wide defaults. Honors LIECHANNEL_TOL when set (see README).
const Tolerances& default_tolerances();
void set_default_tolerances(const Tolerances& tol);

/// Thrown for every violated precondition or failed construction.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace liechannel
