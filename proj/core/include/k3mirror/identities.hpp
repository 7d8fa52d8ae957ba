#pragma once

// Registry of identity checks. Each entry evaluates both sides independently
// and reports the residual: exact series checks report an exact zero or the
// first nonzero coefficient, numeric checks report max |lhs - rhs|.

#include <string>
#include <string_view>
#include <vector>

#include "k3mirror/periods.hpp"

namespace k3mirror::identities {

using hyperfun::PrecComplex;
using hyperfun::PrecFloat;

struct IdentityReport {
  std::string id;
  std::string description;
  bool exact = false;
  int order = 0;                      // truncation order reached (exact checks)
  std::vector<std::string> points;    // evaluation points (numeric checks)
  std::string residual;               // "0" when exactly zero
  std::string tolerance;
  bool pass = false;
  bool informational = false;
};

struct IdentityOptions {
  int order = 40;
  // Numeric checks use the ambient working precision. An empty list selects
  // the registry's default points.
  std::vector<PrecComplex> points;
};

class UnknownIdentity : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& identity_ids();
// The ids whose residual is an exact rational series.
const std::vector<std::string>& exact_identity_ids();

IdentityReport check_identity(std::string_view id, const IdentityOptions& options = {});

struct MirrorPoint {
  PrecComplex lambda;
  PrecComplex tau_mirror;   // W1/W0 at psi(lambda)
  PrecComplex tau_period;   // varpi1/varpi0
  PrecFloat residual;
  PrecComplex w2_over_pi2;  // recorded, never asserted
};

struct MirrorMapCheck {
  IdentityReport summary;
  std::vector<MirrorPoint> points;
};

// |W1/W0 - varpi1/varpi0| on periods::mirror_grid(count), against the
// tolerance 10^-(D - 20).
MirrorMapCheck check_mirror_map(int count = 20);

}  // namespace k3mirror::identities
