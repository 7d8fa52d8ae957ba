#include "k3mirror/continuation.hpp"

#include <cmath>

#include "json.hpp"
#include "k3mirror/periods.hpp"

namespace k3mirror::pfode {

namespace {

bool is_zero(const PrecComplex& z) { return z.real() == 0 && z.imag() == 0; }

PrecFloat segment_distance(const PrecComplex& a, const PrecComplex& b, const PrecComplex& s) {
  const PrecComplex d = b - a;
  const PrecFloat len2 = hyperfun::norm(d);
  if (len2 == 0) return hyperfun::abs(s - a);
  const PrecComplex rel = (s - a) * hyperfun::conj(d);
  PrecFloat t = rel.real() / len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return hyperfun::abs(a + d * t - s);
}

PrecFloat nearest_singularity(const std::vector<PrecComplex>& sing, const PrecComplex& z) {
  PrecFloat best = -1;
  for (const auto& s : sing) {
    const PrecFloat d = hyperfun::abs(z - s);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

// Taylor terms per step: enough that (1/2)^K times the polynomial growth of
// the derivative rows stays below 10^-(D + guard).
int taylor_terms(double step_fraction) {
  const int digits = hyperfun::WorkingPrecision::digits() + hyperfun::WorkingPrecision::kGuardDigits;
  const double per_term = -std::log10(step_fraction);
  return static_cast<int>(std::ceil((digits + 10) / per_term)) + 30;
}

PrecComplex determinant(std::vector<std::vector<PrecComplex>> a) {
  const std::size_t n = a.size();
  PrecComplex det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (hyperfun::abs(a[r][col]) > hyperfun::abs(a[piv][col])) piv = r;
    }
    if (is_zero(a[piv][col])) return {};
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const PrecComplex f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

}  // namespace

PrecComplex SolutionFrame::wronskian() const { return determinant(m); }

PrecFloat path_clearance(const FuchsianOperator& L, const ContinuationPath& path) {
  const auto sing = L.singular_points();
  PrecFloat best = -1;
  for (const auto& s : sing) {
    for (std::size_t k = 0; k < path.waypoints.size(); ++k) {
      const PrecComplex& a = path.waypoints[k];
      const PrecComplex& b = k + 1 < path.waypoints.size() ? path.waypoints[k + 1] : a;
      const PrecFloat d = segment_distance(a, b, s);
      if (best < 0 || d < best) best = d;
    }
  }
  return best;
}

ContinuationResult continue_solution(const FuchsianOperator& L, const ContinuationPath& path,
                                     const SolutionFrame& initial) {
  const int n = L.order();
  if (path.waypoints.empty()) throw ContinuationError("continuation path has no waypoints");
  if (!(path.clearance > 0) || !(path.step_fraction > 0 && path.step_fraction < 1)) {
    throw ContinuationError("continuation path has invalid step control parameters");
  }
  if (static_cast<int>(initial.m.size()) != n) {
    throw ContinuationError("initial frame must have one row per derivative order");
  }
  if (hyperfun::abs(initial.base - path.waypoints.front()) > hyperfun::summation_epsilon()) {
    throw ContinuationError("initial frame is not based at the first waypoint");
  }
  if (is_zero(initial.wronskian())) throw ContinuationError("initial frame is singular");

  const auto sing = L.singular_points();
  // A single waypoint transports nothing, so there is nothing to keep clear.
  if (!sing.empty() && path.waypoints.size() > 1) {
    // The comparison allows for the decimal rendering of waypoints.
    const PrecFloat c = path_clearance(L, path);
    if (c < PrecFloat(path.clearance) * (1 - PrecFloat(1) / 1000000)) {
      throw ContinuationError("path passes within " + hyperfun::to_decimal_string(c, 6) +
                              " of a singular point; clearance is " +
                              std::to_string(path.clearance));
    }
  }

  const int cols = static_cast<int>(initial.m.front().size());
  const int K = taylor_terms(path.step_fraction);
  constexpr int kMaxSteps = 100000;

  ContinuationResult res;
  res.frame = initial;
  res.error_estimate = 0;
  PrecComplex z = initial.base;
  for (std::size_t w = 1; w < path.waypoints.size(); ++w) {
    const PrecComplex target = path.waypoints[w];
    while (true) {
      const PrecComplex remaining = target - z;
      const PrecFloat dist = hyperfun::abs(remaining);
      if (dist == 0) break;
      PrecFloat rho = sing.empty() ? PrecFloat(4) * (dist + 1) : nearest_singularity(sing, z);
      const PrecFloat hmax = rho * PrecFloat(path.step_fraction);
      if (hmax < hyperfun::pow10(30)) throw ContinuationError("step-size underflow near a singular point");
      const bool last = dist <= hmax;
      const PrecComplex h = last ? remaining : remaining * (hmax / dist);

      std::vector<std::vector<PrecComplex>> next(static_cast<std::size_t>(n),
                                                 std::vector<PrecComplex>(static_cast<std::size_t>(cols)));
      PrecFloat step_err = 0;
      for (int j = 0; j < cols; ++j) {
        std::vector<PrecComplex> derivs(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) derivs[i] = res.frame.m[i][j];
        const NumericTaylor y = local_solution(L, z, derivs, K);
        // Horner for each derivative row.
        for (int i = 0; i < n; ++i) {
          PrecComplex acc;
          for (int m = K - 1; m >= i; --m) {
            PrecFloat ff = 1;
            for (int r = 0; r < i; ++r) ff *= m - r;
            acc = acc * h + y.c[static_cast<std::size_t>(m)] * ff;
          }
          next[i][j] = acc;
        }
        // Last retained terms as the truncation estimate.
        const PrecFloat ah = hyperfun::abs(h);
        PrecFloat tail = 0;
        PrecFloat p = boost::multiprecision::pow(ah, K - 4);
        for (int m = K - 4; m < K; ++m) {
          tail += hyperfun::abs(y.c[static_cast<std::size_t>(m)]) * p * (PrecFloat(m) * m + 1);
          p *= ah;
        }
        if (tail > step_err) step_err = tail;
      }
      res.frame.m = std::move(next);
      res.error_estimate += step_err * 2;
      ++res.steps;
      if (res.steps > kMaxSteps) throw ContinuationError("step-size underflow: too many steps");
      if (last) {
        z = target;
        break;
      }
      z += h;
    }
    res.frame.base = z;
  }
  if (is_zero(res.frame.wronskian())) throw ContinuationError("transported frame became singular");
  return res;
}

ContinuationResult continue_legendre(const ContinuationPath& path) {
  if (path.waypoints.empty()) throw ContinuationError("continuation path has no waypoints");
  periods::LegendreJet jet;
  try {
    jet = periods::legendre_jet(path.waypoints.front());
  } catch (const periods::PeriodsError& e) {
    throw ContinuationError(std::string("path start: ") + e.what());
  }
  SolutionFrame f;
  f.base = path.waypoints.front();
  f.m = {{jet.varpi0, jet.varpi1}, {jet.dvarpi0, jet.dvarpi1}};
  return continue_solution(legendre_operator(), path, f);
}

PrecComplex tau_at(const PrecComplex& lambda_target, const ContinuationPath& path) {
  ContinuationPath p = path;
  if (p.waypoints.empty()) p.waypoints.push_back(lambda_target);
  if (hyperfun::abs(p.waypoints.back() - lambda_target) > hyperfun::summation_epsilon()) {
    p.waypoints.push_back(lambda_target);
  }
  for (const Rational& r : {Rational(0), Rational(1)}) {
    if (hyperfun::abs(lambda_target - PrecComplex(r)) == 0) {
      throw ContinuationError("tau_at: target is a singular point of the Legendre family");
    }
  }
  const ContinuationResult res = continue_legendre(p);
  const PrecComplex tau = res.frame.m[0][1] / res.frame.m[0][0];
  if (tau.imag() <= 0) throw ContinuationError("tau_at: continued tau left the upper half plane");
  return tau;
}

ContinuationPath path_to_two_upper() {
  return {{PrecComplex(Rational(1, 10)), PrecComplex(Rational(1, 10)) + PrecComplex::i() * hyperfun::to_prec(Rational(6, 5)),
           PrecComplex(2)}};
}

ContinuationPath path_to_two() {
  return {{PrecComplex(Rational(1, 10)), PrecComplex(Rational(1, 10)) - PrecComplex::i() * hyperfun::to_prec(Rational(6, 5)),
           PrecComplex(2)}};
}

ContinuationPath path_to_sqrt_point() {
  const PrecFloat target = 2 * boost::multiprecision::sqrt(PrecFloat(2)) - 2;
  return {{PrecComplex(Rational(1, 10)), PrecComplex(target)}};
}

ContinuationPath monodromy_loop_zero() {
  const PrecFloat half = PrecFloat(1) / 2;
  return {{PrecComplex(Rational(1, 10)), PrecComplex(half), PrecComplex(PrecFloat(0), half),
           PrecComplex(-half), PrecComplex(PrecFloat(0), -half), PrecComplex(half),
           PrecComplex(Rational(1, 10))}};
}

ContinuationPath parse_path_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ContinuationError(std::string("path is not valid JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw ContinuationError("path must be a nonempty JSON array");
  ContinuationPath p;
  for (const auto& w : j) {
    if (!w.is_array() || w.size() != 2 || !w[0].is_string() || !w[1].is_string()) {
      throw ContinuationError("each waypoint must be a pair of decimal strings");
    }
    try {
      p.waypoints.push_back(
          PrecComplex::parse(w[0].get<std::string>(), w[1].get<std::string>()));
    } catch (const hyperfun::NumericError& e) {
      throw ContinuationError(e.what());
    }
  }
  return p;
}

std::string path_to_json(const ContinuationPath& path, int digits) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& w : path.waypoints) {
    j.push_back({hyperfun::to_decimal_string(w.real(), digits),
                 hyperfun::to_decimal_string(w.imag(), digits)});
  }
  return j.dump();
}

}  // namespace k3mirror::pfode
