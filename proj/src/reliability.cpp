#include "shocknet/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "shocknet/errors.hpp"

namespace shocknet {

namespace {

// Slack when comparing two analytic curves, each carrying truncation error.
constexpr double kCurveSlack = 1e-10;
// Below this, log-reliability (and hence the hazard) is no longer meaningful.
constexpr double kUnderflow = 1e-300;

void require_kind(const SignatureVector& sig, SignatureKind kind, const char* what) {
  if (sig.kind != kind)
    throw ValidationError(std::string(what) + " needs a " + std::string(to_string(kind)) +
                          " signature, got " + std::string(to_string(sig.kind)));
  validate(sig);
}

// Lazily extended beta_0, beta_1, ... for one signature and damage model.
class BetaCache {
 public:
  BetaCache(const SignatureVector& tie, const DamageModel& damage)
      : tail_(tail(tie)), damage_(damage) {
    if (damage.is_fatal())
      throw ValidationError("fatal damage is evaluated with the fatal signature (use the fatal model)");
  }

  double operator[](std::size_t k) {
    while (values_.size() <= k) values_.push_back(beta_general(tail_, damage_, values_.size()));
    return values_[k];
  }

 private:
  TailVector tail_;
  DamageModel damage_;
  std::vector<double> values_;
};

struct MixturePoint {
  double count_mixture = 1;
  double arrival_mixture = 1;
  double weighted_density = 0;  // sum_k b_k P(xi(t) = k-1), for the hazard
  std::vector<double> weights;  // b_k P(theta_k > t), k = 1..K, then beta_K
};

MixturePoint evaluate_mixtures(BetaCache& beta, const FirstArrivalLaw& law, double t,
                               bool keep_weights) {
  const double mean = law.mvf(t);
  const std::size_t K = truncation_index(mean);
  const auto pmf = poisson_pmf_table(mean, K);

  MixturePoint out;
  out.count_mixture = 0;
  for (std::size_t k = 0; k <= K; ++k) out.count_mixture += beta[k] * pmf[k];

  // P(theta_k > t) = P(xi(t) <= k-1); arrivals past K survive t with
  // probability within the Poisson tail of one, so they contribute beta_K.
  double arrival_survival_k = 0;
  out.arrival_mixture = 0;
  for (std::size_t k = 1; k <= K; ++k) {
    arrival_survival_k += pmf[k - 1];
    const double b = std::max(0.0, beta[k - 1] - beta[k]);
    out.arrival_mixture += b * arrival_survival_k;
    out.weighted_density += b * pmf[k - 1];
    if (keep_weights) out.weights.push_back(b * arrival_survival_k);
  }
  out.arrival_mixture += beta[K];
  // The density sum runs one index further: b_{K+1} P(xi(t) = K).
  out.weighted_density += std::max(0.0, beta[K] - beta[K + 1]) * pmf[K];
  if (keep_weights) out.weights.push_back(beta[K]);
  return out;
}

std::vector<double> signature_doubles(const SignatureVector& sig) { return sig.as_doubles(); }

}  // namespace

void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw ValidationError("evaluation grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0)
      throw ValidationError("grid times must be finite and >= 0");
    if (i && !(grid[i] > grid[i - 1])) throw ValidationError("grid times must strictly increase");
  }
}

std::vector<double> uniform_grid(double t_max, std::size_t points) {
  if (!(t_max > 0) || points < 2) throw ValidationError("uniform grid needs t_max > 0 and >= 2 points");
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = t_max * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

double find_t_max(const std::function<double(double)>& reliability, double level) {
  double hi = 1;
  while (reliability(hi) >= level) {
    hi *= 2;
    if (hi > 1e12) throw NumericError("reliability does not fall below " + std::to_string(level));
  }
  double lo = 0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (reliability(mid) < level ? hi : lo) = mid;
  }
  return hi;
}

ReliabilityCurve reliability_shock_model(const SignatureVector& tie, const FirstArrivalLaw& law,
                                         const DamageModel& damage, std::span<const double> grid) {
  require_kind(tie, SignatureKind::tie, "shock-model reliability");
  validate_grid(grid);
  BetaCache beta(tie, damage);

  ReliabilityCurve curve;
  curve.grid.assign(grid.begin(), grid.end());
  curve.truncation_bound = kTruncationTolerance;
  for (double t : grid) {
    const auto point = evaluate_mixtures(beta, law, t, false);
    if (std::abs(point.count_mixture - point.arrival_mixture) > 10 * curve.truncation_bound) {
      std::ostringstream msg;
      msg << std::setprecision(17) << "count and arrival mixtures disagree at t=" << t << ": "
          << point.count_mixture << " vs " << point.arrival_mixture;
      throw NumericError(msg.str());
    }
    curve.values.push_back(std::clamp(point.count_mixture, 0.0, 1.0));
    curve.cross_check.push_back(point.arrival_mixture);
  }
  return curve;
}

ReliabilityCurve reliability_shock_model(const Network& net, const FirstArrivalLaw& law,
                                         const DamageModel& damage, std::span<const double> grid) {
  return reliability_shock_model(t_signature(net), law, damage, grid);
}

ReliabilityCurve reliability_component_model(const SignatureVector& classical,
                                             const FirstArrivalLaw& law,
                                             std::span<const double> grid) {
  require_kind(classical, SignatureKind::classical, "component-model reliability");
  validate_grid(grid);
  const auto sbar = tail(classical).as_doubles();
  const std::size_t n = sbar.size();

  ReliabilityCurve curve;
  curve.grid.assign(grid.begin(), grid.end());
  for (double t : grid) {
    const auto pmf = poisson_pmf_table(law.mvf(t), n - 1);
    double r = 0;
    for (std::size_t i = 0; i < n; ++i) r += sbar[i] * pmf[i];
    curve.values.push_back(std::clamp(r, 0.0, 1.0));
  }
  return curve;
}

ReliabilityCurve reliability_fatal(const SignatureVector& fatal, const FirstArrivalLaw& law,
                                   std::span<const double> grid) {
  require_kind(fatal, SignatureKind::fatal, "fatal-shock reliability");
  validate_grid(grid);
  const auto s = signature_doubles(fatal);
  const auto sbar = tail(fatal).as_doubles();
  const std::size_t n = s.size();

  ReliabilityCurve curve;
  curve.grid.assign(grid.begin(), grid.end());
  for (double t : grid) {
    const auto pmf = poisson_pmf_table(law.mvf(t), n - 1);
    double by_arrival = 0;
    double by_count = 0;
    double arrival_survival_i = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      arrival_survival_i += pmf[i - 1];
      by_arrival += s[i - 1] * arrival_survival_i;
      by_count += sbar[i - 1] * pmf[i - 1];
    }
    if (std::abs(by_arrival - by_count) > 1e-12) {
      std::ostringstream msg;
      msg << std::setprecision(17) << "fatal-shock representations disagree at t=" << t << ": "
          << by_arrival << " vs " << by_count;
      throw NumericError(msg.str());
    }
    curve.values.push_back(std::clamp(by_count, 0.0, 1.0));
    curve.cross_check.push_back(by_arrival);
  }
  return curve;
}

std::vector<double> hazard_weights(const SignatureVector& tie, const FirstArrivalLaw& law,
                                   const DamageModel& damage, double t) {
  require_kind(tie, SignatureKind::tie, "hazard weights");
  if (t < 0) throw ValidationError("time must be >= 0");
  BetaCache beta(tie, damage);
  auto point = evaluate_mixtures(beta, law, t, true);
  if (!(point.arrival_mixture > kUnderflow)) throw NumericError("reliability underflow");
  for (double& w : point.weights) w /= point.arrival_mixture;
  return point.weights;
}

HazardCurve hazard_curve(const SignatureVector& tie, const FirstArrivalLaw& law,
                         const DamageModel& damage, std::span<const double> grid) {
  require_kind(tie, SignatureKind::tie, "hazard curve");
  validate_grid(grid);
  BetaCache beta(tie, damage);

  HazardCurve out;
  for (double t : grid) {
    const auto point = evaluate_mixtures(beta, law, t, false);
    if (!(point.arrival_mixture > kUnderflow)) {
      out.truncated_at = t;
      break;
    }
    // lambda_k(t) = Lambda'(t) P(xi(t) = k-1) / P(theta_k > t), so the
    // weighted sum collapses to Lambda'(t) sum_k b_k P(xi(t) = k-1) / R(t).
    out.grid.push_back(t);
    out.reliability.push_back(point.arrival_mixture);
    out.hazard.push_back(law.intensity(t) * point.weighted_density / point.arrival_mixture);
  }
  return out;
}

std::vector<double> numeric_hazard(std::span<const double> grid, std::span<const double> values) {
  if (grid.size() != values.size()) throw ValidationError("grid and values differ in length");
  std::vector<double> h(grid.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (values[i - 1] <= 0 || values[i + 1] <= 0) continue;
    h[i] = -(std::log(values[i + 1]) - std::log(values[i - 1])) / (grid[i + 1] - grid[i - 1]);
  }
  return h;
}

ComparisonReport compare_networks(const ModelConfig& first, const ModelConfig& second,
                                  std::span<const double> grid) {
  validate_grid(grid);
  ComparisonReport rep;
  rep.grid.assign(grid.begin(), grid.end());
  rep.first = reliability_shock_model(first.tie, first.law, first.damage, grid).values;
  rep.second = reliability_shock_model(second.tie, second.law, second.damage, grid).values;

  auto add = [&](std::string name, bool holds) {
    rep.premises.push_back({std::move(name), holds});
    return holds;
  };

  const bool both_binomial = first.damage.is_binomial() && second.damage.is_binomial();
  const double p1 = both_binomial ? first.damage.binomial_params().p : 0;
  const double p2 = both_binomial ? second.damage.binomial_params().p : 0;
  const bool p_ge = add("p1 >= p2", both_binomial && p1 >= p2);
  const bool p_eq = add("p1 == p2", both_binomial && p1 == p2);

  bool g_le = true;
  bool g_eq = true;
  for (double t : grid) {
    const double g1 = first.law.survival(t);
    const double g2 = second.law.survival(t);
    if (g1 > g2 + kOrderingSlack) g_le = false;
    if (std::abs(g1 - g2) > kOrderingSlack) g_eq = false;
  }
  add("G1 <=st G2 (first-arrival survival, on grid)", g_le);
  add("G1 == G2 (on grid)", g_eq);

  const auto s1 = signature_doubles(first.tie);
  const auto s2 = signature_doubles(second.tie);
  const bool sig_st = add("s1 <=st s2 (tie signatures)", order_check(s1, s2, OrderRelation::st).holds);
  const bool sig_hr = add("s1 <=hr s2 (tie signatures)", order_check(s1, s2, OrderRelation::hr).holds);

  const std::size_t kmax = truncation_index(std::max(first.law.mvf(grid.back()), 1.0));
  const bool tp2 = add("P(xi(t)=k) TP2 in (t, k) (first law, on grid)",
                       tp2_check(count_pmf_matrix(first.law, grid, kmax)).holds);

  rep.st_premises = p_ge && g_le && sig_st;
  rep.hr_premises = p_eq && g_eq && sig_hr && tp2;

  rep.first_below = true;
  rep.second_below = true;
  rep.hr_conclusion = true;
  int sign = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = rep.second[i] - rep.first[i];
    if (d < -kCurveSlack) rep.first_below = false;
    if (d > kCurveSlack) rep.second_below = false;
    if (i + 1 < grid.size() &&
        rep.second[i] * rep.first[i + 1] > rep.second[i + 1] * rep.first[i] + kCurveSlack)
      rep.hr_conclusion = false;
    const int s = d > kCurveSlack ? 1 : (d < -kCurveSlack ? -1 : 0);
    if (s != 0) {
      if (sign != 0 && s != sign && !rep.crossing) rep.crossing = grid[i];
      sign = s;
    }
  }
  rep.equal = rep.first_below && rep.second_below;
  return rep;
}

std::string ComparisonReport::to_text() const {
  std::ostringstream out;
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  out << "premise                                              holds\n";
  for (const auto& p : premises) out << std::left << std::setw(53) << p.name << yes(p.holds) << '\n';
  out << '\n';
  out << std::left << std::setw(53) << "st premises (p1>=p2, G1<=st G2, s1<=st s2)" << yes(st_premises) << '\n';
  out << std::left << std::setw(53) << "hr premises (p1=p2, G1=G2, s1<=hr s2, TP2)" << yes(hr_premises) << '\n';
  out << '\n';
  out << std::left << std::setw(53) << "conclusion T1 <=st T2 (curve 1 <= curve 2)" << yes(first_below) << '\n';
  out << std::left << std::setw(53) << "conclusion T2 <=st T1 (curve 2 <= curve 1)" << yes(second_below) << '\n';
  out << std::left << std::setw(53) << "conclusion T1 <=hr T2 (curve 2 / curve 1 rising)" << yes(hr_conclusion) << '\n';
  out << std::left << std::setw(53) << "curves equal" << yes(equal) << '\n';
  out << std::left << std::setw(53) << "curves cross";
  if (crossing) out << "yes (near t=" << *crossing << ")\n";
  else out << "no\n";
  if (st_premises) out << "predicted st ordering " << (first_below ? "confirmed" : "VIOLATED") << '\n';
  if (hr_premises) out << "predicted hr ordering " << (hr_conclusion ? "confirmed" : "VIOLATED") << '\n';
  return out.str();
}

}  // namespace shocknet
