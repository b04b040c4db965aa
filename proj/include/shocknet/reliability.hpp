#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shocknet/ordering.hpp"
#include "shocknet/shock_model.hpp"
#include "shocknet/signature.hpp"

namespace shocknet {

/// P(T > t) on an increasing grid of times.
struct ReliabilityCurve {
  std::vector<double> grid;
  std::vector<double> values;
  /// Monte Carlo standard errors; empty for analytic curves.
  std::vector<double> standard_error;
  double truncation_bound = 0;
  /// The same curve through the second representation, when one exists
  /// (arrival mixture for shock models and for fatal shocks).
  std::vector<double> cross_check;
};

/// Throws ValidationError unless the grid is nonempty, finite, >= 0 and strictly increasing.
void validate_grid(std::span<const double> grid);

/// `points` equally spaced times on [0, t_max].
std::vector<double> uniform_grid(double t_max, std::size_t points = 200);

/// Smallest t_max (by doubling then bisection) at which `reliability` falls
/// below `level`.
double find_t_max(const std::function<double(double)>& reliability, double level = 1e-3);

/// Count mixture P(T > t) = sum_k beta_k P(xi(t) = k), truncated where the
/// Poisson tail drops below 1e-12. The arrival mixture sum_k b_k P(theta_k > t)
/// is evaluated alongside and must agree within 10x the truncation bound.
/// `tie` is the tie signature; damage must be binomial or one-per-shock.
ReliabilityCurve reliability_shock_model(const SignatureVector& tie, const FirstArrivalLaw& law,
                                         const DamageModel& damage, std::span<const double> grid);
ReliabilityCurve reliability_shock_model(const Network& net, const FirstArrivalLaw& law,
                                         const DamageModel& damage, std::span<const double> grid);

/// Component failures themselves arrive as the counting process:
/// P(T > t) = sum_{i<n} Sbar_i P(N(t) = i) with the classical signature.
ReliabilityCurve reliability_component_model(const SignatureVector& classical,
                                             const FirstArrivalLaw& law,
                                             std::span<const double> grid);

/// Fatal shocks: sum_{i<n} Sbar*_i P(zeta(t) = i), cross-checked against
/// sum_i s*_i P(rho_i > t) to 1e-12.
ReliabilityCurve reliability_fatal(const SignatureVector& fatal, const FirstArrivalLaw& law,
                                   std::span<const double> grid);

/// Weights p_k(t) = P(T = theta_k | T > t), k = 1..K(t), plus the residual
/// weight of arrivals beyond the truncation index as the last element.
std::vector<double> hazard_weights(const SignatureVector& tie, const FirstArrivalLaw& law,
                                   const DamageModel& damage, double t);

struct HazardCurve {
  std::vector<double> grid;
  std::vector<double> hazard;
  std::vector<double> reliability;
  /// First grid time where reliability underflowed; the curve stops before it.
  std::optional<double> truncated_at;
};

/// lambda(t) = sum_k p_k(t) lambda_k(t) with lambda_k the hazard of the k-th arrival.
HazardCurve hazard_curve(const SignatureVector& tie, const FirstArrivalLaw& law,
                         const DamageModel& damage, std::span<const double> grid);

/// Central difference of -log R on interior grid points (NaN at the ends).
std::vector<double> numeric_hazard(std::span<const double> grid, std::span<const double> values);

/// One network/law/damage triple for comparisons.
struct ModelConfig {
  std::string label;
  SignatureVector tie;
  FirstArrivalLaw law;
  DamageModel damage;
};

struct PremiseCheck {
  std::string name;
  bool holds = false;
};

struct ComparisonReport {
  std::vector<double> grid;
  std::vector<double> first;
  std::vector<double> second;

  std::vector<PremiseCheck> premises;
  bool st_premises = false;  // p1 >= p2, G1 <=st G2, s1 <=st s2
  bool hr_premises = false;  // p1 == p2, G1 == G2, s1 <=hr s2, count pmf TP2

  bool first_below = false;   // curve 1 <= curve 2 everywhere
  bool second_below = false;  // curve 2 <= curve 1 everywhere
  bool equal = false;
  bool hr_conclusion = false;  // curve 2 / curve 1 non-decreasing
  std::optional<double> crossing;  // first time the sign of (curve 2 - curve 1) flips

  std::string to_text() const;
};

/// Evaluates both reliability curves, checks the premises of the st/hr
/// comparison results and whether their conclusions hold on the grid.
ComparisonReport compare_networks(const ModelConfig& first, const ModelConfig& second,
                                  std::span<const double> grid);

}  // namespace shocknet
