#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "shocknet/shock_model.hpp"

namespace shocknet {

/// Slack absorbing floating-point noise in every ordering and aging verdict.
inline constexpr double kOrderingSlack = 1e-12;

enum class OrderRelation { st, hr, lr };

std::string_view to_string(OrderRelation r);

/// Verdict for "a <= b" in the given order. `witness` is the first 1-based
/// index where the relation fails and is present iff holds is false.
struct OrderingVerdict {
  OrderRelation relation = OrderRelation::st;
  bool holds = true;
  std::optional<std::size_t> witness;
};

/// a and b are pmfs over 1, 2, ...; mass missing from a sum below one sits
/// beyond the last entry.
///   st: survival of a <= survival of b everywhere
///   hr: Sbar_b / Sbar_a non-decreasing (cross-multiplied, so zeros are fine)
///   lr: b_k / a_k non-decreasing over the support of a; b_k > 0 where a_k = 0
///       is allowed only beyond the last support point of a
OrderingVerdict order_check(std::span<const double> a, std::span<const double> b,
                            OrderRelation relation);

/// Result of scanning adjacent 2x2 minors of a kernel K(row, col).
struct Tp2Verdict {
  bool holds = true;
  std::size_t row = 0;  // violating minor uses rows row, row+1
  std::size_t col = 0;  // and columns col, col+1
  double minor = 0;
};

/// TP2 iff every adjacent minor K(i+1,j+1)K(i,j) - K(i,j+1)K(i+1,j) is at
/// least -1e-12 times the larger of its two products.
Tp2Verdict tp2_check(const std::vector<std::vector<double>>& matrix);

/// P(xi(t) = k) with rows over `grid` and columns k = 0..kmax.
std::vector<std::vector<double>> count_pmf_matrix(const FirstArrivalLaw& law,
                                                  std::span<const double> grid, std::size_t kmax);

struct AgingVerdict {
  bool holds = true;
  std::optional<std::size_t> first_violation;
};

/// IHRA of a discrete survival sequence: beta_k^{1/k} >= beta_{k+1}^{1/(k+1)} - 1e-12
/// for k = 1..K-1.
AgingVerdict ihra_check(const BetaSequence& beta, std::size_t K);

struct RatioProfile {
  std::vector<double> ratios;  // ratios[k] = beta_{k+1} / beta_k, k = 0..K-1
  bool non_increasing = true;
  bool constant = true;
  std::optional<std::size_t> first_increase;  // k with ratios[k] > ratios[k-1]
};

/// IHR profile of a discrete survival sequence; requires beta_k > 0 for k <= K.
RatioProfile ihr_ratio_profile(const BetaSequence& beta, std::size_t K);

}  // namespace shocknet
