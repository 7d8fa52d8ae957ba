#pragma once

// Linear differential operators with polynomial coefficients,
//
//     L = p_n(x) D^n + ... + p_1(x) D + p_0(x),   D = d/dx,
//
// their action on exact and numeric local solutions, and the symmetric
// square. Analytic continuation lives in continuation.hpp.

#include <optional>
#include <string>
#include <vector>

#include "k3mirror/polynomial.hpp"
#include "k3mirror/qseries.hpp"

namespace k3mirror::pfode {

using qseries::RationalSeries;

class OperatorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class FuchsianOperator {
 public:
  // coeffs[k] multiplies D^k. The common polynomial content is divided out so
  // that the leading coefficient vanishes exactly at the finite singularities.
  FuchsianOperator(std::vector<Polynomial> coeffs, std::string variable);

  // From theta-form sum_j q_j(x) theta^j, theta = x D, using
  // theta^j = sum_i S(j, i) x^i D^i with Stirling numbers of the second kind.
  static FuchsianOperator from_theta_form(const std::vector<Polynomial>& theta_coeffs,
                                          std::string variable);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Polynomial>& coeffs() const noexcept { return coeffs_; }
  const Polynomial& coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  const Polynomial& leading() const { return coeffs_.back(); }
  const std::string& variable() const noexcept { return variable_; }

  // Finite singular points (roots of the leading coefficient); infinity is
  // always singular for the operators in scope and is not listed.
  std::vector<PrecComplex> singular_points() const;

  std::string to_string() const;

 private:
  std::vector<Polynomial> coeffs_;
  std::string variable_;
};

// theta^2 - lambda (theta + 1/2)^2, i.e.
// lambda (1 - lambda) D^2 + (1 - 2 lambda) D - 1/4.
FuchsianOperator legendre_operator();
// theta^3 - t (theta + 1/4)(theta + 1/2)(theta + 3/4).
FuchsianOperator dwork_d3();
// theta^2 - t (theta + 1/8)(theta + 3/8).
FuchsianOperator dwork_d2();
// lambda (1 - lambda)(2 - lambda)^2 D^2 + (2 - lambda)(2 - 4 lambda + lambda^2) D - 3 lambda / 4.
FuchsianOperator pullback_d2();
// symmetric_square(pullback_d2()).
FuchsianOperator pullback_d3();

// sum_k parts[k] log(x)^k with exact series parts sharing the variable x.
struct LogSeries {
  std::vector<RationalSeries> parts;
};

// L applied to an exact series; the residual carries the tightest provable
// truncation order.
RationalSeries apply_operator(const FuchsianOperator& L, const RationalSeries& s);
LogSeries apply_operator(const FuchsianOperator& L, const LogSeries& s);
// True if every known coefficient of every part is zero.
bool is_exact_zero(const LogSeries& s);
// Smallest truncation order among the parts.
int known_order(const LogSeries& s);

// Local Taylor data y = sum c_m (x - center)^m.
struct NumericTaylor {
  PrecComplex center;
  std::vector<PrecComplex> c;
};

// Residual Taylor coefficients; only the first c.size() - order() entries
// are determined and returned.
std::vector<PrecComplex> apply_operator(const FuchsianOperator& L, const NumericTaylor& y);

// Taylor coefficients (count of them) at an ordinary point of the solution
// with initial data y^(i)(center) = derivs[i].
NumericTaylor local_solution(const FuchsianOperator& L, const PrecComplex& center,
                             const std::vector<PrecComplex>& derivs, int count);

FuchsianOperator symmetric_square(const FuchsianOperator& L2);

// A rational function f = num/den with a = f * b termwise, if one exists.
struct RationalFunction {
  Polynomial num;
  Polynomial den;
  std::string to_string(const std::string& var) const;
};
std::optional<RationalFunction> proportionality_factor(const FuchsianOperator& a,
                                                       const FuchsianOperator& b);

}  // namespace k3mirror::pfode
