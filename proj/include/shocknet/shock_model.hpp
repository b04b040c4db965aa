#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "shocknet/signature.hpp"

namespace shocknet {

/// Poisson tail mass below which the count mixtures are truncated.
inline constexpr double kTruncationTolerance = 1e-12;

// Shock arrivals form a nonhomogeneous Poisson process identified by its mean
// value function Lambda(t) = E[xi(t)] = -log Gbar(t), where Gbar is the
// survival function of the first arrival.

struct Exponential {
  double rate;  // Lambda(t) = rate * t
};

struct Weibull {
  double shape;
  double scale;  // Lambda(t) = (t / scale)^shape
};

/// Hazard a + 2bt, so Lambda(t) = a t + b t^2. (a, b) = (1, 1) gives
/// Gbar(t) = exp(-t - t^2).
struct LinearHazard {
  double a;
  double b;
};

/// Lambda given at knots, linear in between, extrapolated with the last slope.
struct PiecewiseMvf {
  std::vector<double> t;
  std::vector<double> mvf;
};

class FirstArrivalLaw {
 public:
  using Family = std::variant<Exponential, Weibull, LinearHazard, PiecewiseMvf>;

  static FirstArrivalLaw exponential(double rate);
  static FirstArrivalLaw weibull(double shape, double scale);
  static FirstArrivalLaw linear_hazard(double a, double b);
  /// Knots must have strictly increasing t >= 0 and non-decreasing Lambda;
  /// (0, 0) is prepended when the first knot is later than t = 0.
  static FirstArrivalLaw piecewise(std::vector<double> t, std::vector<double> mvf);

  const Family& family() const noexcept { return family_; }

  double mvf(double t) const;
  /// Lambda'(t), the shock intensity (right derivative at knots).
  double intensity(double t) const;
  /// Smallest t with Lambda(t) >= x; +infinity when Lambda stays below x.
  double inverse_mvf(double x) const;
  /// Gbar(t) = exp(-Lambda(t)).
  double survival(double t) const;

  std::string describe() const;

 private:
  explicit FirstArrivalLaw(Family f) : family_(std::move(f)) {}
  Family family_;
};

/// `exp:rate=1`, `weibull:shape=2,scale=1`, `linhaz:a=1,b=1`, `mvf:file=<csv of t,Lambda>`.
FirstArrivalLaw parse_law(std::string_view spec);

struct BinomialDamage {
  double p;  // per-shock failure probability of each surviving link
  double q;  // 1 - p
};
struct OnePerShock {};
struct FatalDamage {};

class DamageModel {
 public:
  using Variant = std::variant<BinomialDamage, OnePerShock, FatalDamage>;

  static DamageModel binomial(double p);
  static DamageModel one_per_shock() { return DamageModel(OnePerShock{}); }
  static DamageModel fatal() { return DamageModel(FatalDamage{}); }

  const Variant& variant() const noexcept { return v_; }
  bool is_binomial() const noexcept { return std::holds_alternative<BinomialDamage>(v_); }
  bool is_fatal() const noexcept { return std::holds_alternative<FatalDamage>(v_); }
  const BinomialDamage& binomial_params() const { return std::get<BinomialDamage>(v_); }

  std::string describe() const;

 private:
  explicit DamageModel(Variant v) : v_(v) {}
  Variant v_;
};

/// `binomial:p=0.1`, `one-per-shock`, `fatal`.
DamageModel parse_damage(std::string_view spec);

// -- Poisson counts ---------------------------------------------------------

/// e^{-mean} mean^k / k!.
double poisson_pmf(double mean, std::size_t k);

/// pmf for k = 0..kmax, by multiplicative recurrence outward from the mode
/// (the mode term is evaluated in log space when mean > 30).
std::vector<double> poisson_pmf_table(double mean, std::size_t kmax);

/// Smallest K with P(xi > K) < tolerance for xi ~ Poisson(mean), using the
/// geometric bound P(xi > K) <= pmf(K+1) / (1 - mean/(K+2)).
std::size_t truncation_index(double mean, double tolerance = kTruncationTolerance);

/// P(xi(t) = k).
double count_pmf(const FirstArrivalLaw& law, double t, std::size_t k);

/// P(theta_k > t) = sum_{x<k} P(xi(t) = x), k >= 1.
double arrival_survival(const FirstArrivalLaw& law, double t, std::size_t k);

// -- Damage and survival-after-k-shocks coefficients ------------------------

/// P(W_1 + ... + W_k = j) = C(n,j) (1-q^k)^j q^{k(n-j)} under binomial damage.
double cumulative_damage_pmf(std::size_t n, double q, std::size_t k, std::size_t j);

/// beta*_k = sum_{j=0}^{n-1} Sbar_j C(n,j) (1-q^k)^j q^{k(n-j)}, beta*_0 = 1.
double beta_star(const TailVector& tail, double q, std::size_t k);

/// beta*_k = sum_j s_j * integral_{1-q^k}^1 u^{j-1}(1-u)^{n-j} / B(j, n-j+1) du,
/// via the regularized incomplete beta function.
double beta_star_incomplete_beta(const SignatureVector& sig, double q, std::size_t k);

/// beta_k = P(T > theta_k). Binomial delegates to beta_star; OnePerShock gives
/// Sbar_k (0 for k >= n). FatalDamage is rejected.
double beta_general(const TailVector& tail, const DamageModel& damage, std::size_t k);

/// beta_0..beta_K with the truncation index and the tail bound beta_K.
struct BetaSequence {
  std::vector<double> values;
  std::size_t truncation_index = 0;
  double tail_bound = 0;

  double operator[](std::size_t k) const { return values.at(k); }
};

BetaSequence make_beta_sequence(const TailVector& tail, const DamageModel& damage, std::size_t K);

/// b_k = beta_{k-1} - beta_k = P(T = theta_k) for k = 1..K; `tail` = beta_K is
/// the mass beyond the last entry.
struct StSignature {
  std::vector<double> probabilities;
  double tail = 0;
};

StSignature st_signature(const BetaSequence& beta);

}  // namespace shocknet
