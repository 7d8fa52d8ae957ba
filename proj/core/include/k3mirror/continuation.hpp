#pragma once

// Analytic continuation of fundamental systems along polygonal paths by
// local Taylor expansion.

#include <string>
#include <string_view>
#include <vector>

#include "k3mirror/pfode.hpp"

namespace k3mirror::pfode {

using hyperfun::PrecFloat;

class ContinuationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct SolutionFrame {
  PrecComplex base;
  // m[i][j] = i-th derivative of solution j at base.
  std::vector<std::vector<PrecComplex>> m;

  PrecComplex wronskian() const;
};

struct ContinuationPath {
  std::vector<PrecComplex> waypoints;
  double clearance = 0.1;
  // A step is at most this fraction of the distance to the nearest
  // singularity.
  double step_fraction = 0.5;
};

struct ContinuationResult {
  SolutionFrame frame;
  PrecFloat error_estimate;
  int steps = 0;
};

// Transports `initial` (based at the first waypoint) along the path.
ContinuationResult continue_solution(const FuchsianOperator& L, const ContinuationPath& path,
                                     const SolutionFrame& initial);

// Minimum distance from the path to the finite singular points of L.
PrecFloat path_clearance(const FuchsianOperator& L, const ContinuationPath& path);

// Legendre periods continued along a path starting inside the series disk;
// columns are (varpi0, varpi1).
ContinuationResult continue_legendre(const ContinuationPath& path);
// tau = varpi1 / varpi0 at the path's end point.
PrecComplex tau_at(const PrecComplex& lambda_target, const ContinuationPath& path);

// Canonical paths.
// The detour below the real axis is the one on which tau(2) = (-1 + i)/2 and
// varpi0(2)^2 = theta3^4(-i e^(-pi/2)); the upper detour gives (1 + i)/2.
ContinuationPath path_to_two();              // 0.1 -> 0.1 - 1.2i -> 2
ContinuationPath path_to_two_upper();        // 0.1 -> 0.1 + 1.2i -> 2
ContinuationPath path_to_sqrt_point();       // 0.1 -> 2 sqrt(2) - 2 along the real axis
ContinuationPath monodromy_loop_zero();      // once around lambda = 0, counterclockwise

// JSON list of waypoints, each a pair of decimal strings: [["0.1","0"], ...].
ContinuationPath parse_path_json(std::string_view text);
std::string path_to_json(const ContinuationPath& path, int digits);

}  // namespace k3mirror::pfode
