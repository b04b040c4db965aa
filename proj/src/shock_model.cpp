#include "shocknet/shock_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>

#include "shocknet/errors.hpp"
#include "shocknet/format.hpp"

namespace shocknet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_number(double x) { return format_double(x); }

/// Splits "name:k1=v1,k2=v2" into the name and a key/value map.
std::pair<std::string, std::map<std::string, std::string>> split_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  std::string name(spec.substr(0, colon));
  std::map<std::string, std::string> params;
  if (colon == std::string_view::npos) return {name, params};
  std::string rest(spec.substr(colon + 1));
  std::istringstream in(rest);
  for (std::string item; std::getline(in, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ValidationError("malformed parameter '" + item + "' in '" + std::string(spec) + "'");
    params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return {name, params};
}

double number_param(const std::map<std::string, std::string>& params, const std::string& key,
                    std::string_view spec) {
  auto it = params.find(key);
  if (it == params.end())
    throw ValidationError("missing parameter '" + key + "' in '" + std::string(spec) + "'");
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != it->second.size() || !std::isfinite(v))
    throw ValidationError("parameter '" + key + "' is not a number: '" + it->second + "'");
  return v;
}

void reject_unknown(const std::map<std::string, std::string>& params,
                    std::initializer_list<std::string_view> known, std::string_view spec) {
  for (const auto& [k, v] : params)
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw ValidationError("unknown parameter '" + k + "' in '" + std::string(spec) + "'");
}

double log_poisson_pmf(double mean, std::size_t k) {
  const double kd = static_cast<double>(k);
  return kd * std::log(mean) - mean - std::lgamma(kd + 1);
}

}  // namespace

// -- FirstArrivalLaw --------------------------------------------------------

FirstArrivalLaw FirstArrivalLaw::exponential(double rate) {
  if (!(rate > 0) || !std::isfinite(rate)) throw ValidationError("exponential rate must be > 0");
  return FirstArrivalLaw(Exponential{rate});
}

FirstArrivalLaw FirstArrivalLaw::weibull(double shape, double scale) {
  if (!(shape > 0) || !(scale > 0) || !std::isfinite(shape) || !std::isfinite(scale))
    throw ValidationError("weibull shape and scale must be > 0");
  return FirstArrivalLaw(Weibull{shape, scale});
}

FirstArrivalLaw FirstArrivalLaw::linear_hazard(double a, double b) {
  if (!(a >= 0) || !(b >= 0) || !(a + b > 0) || !std::isfinite(a) || !std::isfinite(b))
    throw ValidationError("linear hazard needs a >= 0, b >= 0, a + b > 0");
  return FirstArrivalLaw(LinearHazard{a, b});
}

FirstArrivalLaw FirstArrivalLaw::piecewise(std::vector<double> t, std::vector<double> mvf) {
  if (t.size() != mvf.size() || t.empty())
    throw ValidationError("mean value function table needs matching, nonempty t and Lambda columns");
  if (t.front() < 0) throw ValidationError("mean value function knots must have t >= 0");
  if (t.front() > 0) {
    t.insert(t.begin(), 0.0);
    mvf.insert(mvf.begin(), 0.0);
  } else if (mvf.front() != 0) {
    throw ValidationError("mean value function must satisfy Lambda(0) = 0");
  }
  if (t.size() < 2) throw ValidationError("mean value function needs at least two knots");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw ValidationError("mean value function knots must increase in t");
    if (mvf[i] < mvf[i - 1]) throw ValidationError("mean value function must be non-decreasing");
  }
  for (double x : mvf)
    if (!std::isfinite(x) || x < 0) throw ValidationError("mean value function values must be finite and >= 0");
  return FirstArrivalLaw(PiecewiseMvf{std::move(t), std::move(mvf)});
}

namespace {

double last_slope(const PiecewiseMvf& p) {
  const std::size_t n = p.t.size();
  return (p.mvf[n - 1] - p.mvf[n - 2]) / (p.t[n - 1] - p.t[n - 2]);
}

}  // namespace

double FirstArrivalLaw::mvf(double t) const {
  if (t <= 0) return 0;
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return e.rate * t; },
          [&](const Weibull& w) { return std::pow(t / w.scale, w.shape); },
          [&](const LinearHazard& l) { return l.a * t + l.b * t * t; },
          [&](const PiecewiseMvf& p) {
            const std::size_t n = p.t.size();
            if (t >= p.t[n - 1]) return p.mvf[n - 1] + last_slope(p) * (t - p.t[n - 1]);
            const auto i = static_cast<std::size_t>(
                std::upper_bound(p.t.begin(), p.t.end(), t) - p.t.begin() - 1);
            const double w = (t - p.t[i]) / (p.t[i + 1] - p.t[i]);
            return p.mvf[i] + w * (p.mvf[i + 1] - p.mvf[i]);
          },
      },
      family_);
}

double FirstArrivalLaw::intensity(double t) const {
  if (t < 0) return 0;
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return e.rate; },
          [&](const Weibull& w) {
            return w.shape / w.scale * std::pow(t / w.scale, w.shape - 1);
          },
          [&](const LinearHazard& l) { return l.a + 2 * l.b * t; },
          [&](const PiecewiseMvf& p) {
            const std::size_t n = p.t.size();
            if (t >= p.t[n - 1]) return last_slope(p);
            const auto i = static_cast<std::size_t>(
                std::upper_bound(p.t.begin(), p.t.end(), t) - p.t.begin() - 1);
            return (p.mvf[i + 1] - p.mvf[i]) / (p.t[i + 1] - p.t[i]);
          },
      },
      family_);
}

double FirstArrivalLaw::inverse_mvf(double x) const {
  if (x <= 0) return 0;
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return x / e.rate; },
          [&](const Weibull& w) { return w.scale * std::pow(x, 1 / w.shape); },
          [&](const LinearHazard& l) {
            // Root of b t^2 + a t - x = 0 in the cancellation-free form.
            return 2 * x / (l.a + std::sqrt(l.a * l.a + 4 * l.b * x));
          },
          [&](const PiecewiseMvf& p) {
            const std::size_t n = p.t.size();
            if (x > p.mvf[n - 1]) {
              const double slope = last_slope(p);
              return slope > 0 ? p.t[n - 1] + (x - p.mvf[n - 1]) / slope : kInf;
            }
            const auto j = static_cast<std::size_t>(
                std::lower_bound(p.mvf.begin(), p.mvf.end(), x) - p.mvf.begin());
            // mvf[j-1] < x <= mvf[j]
            const double w = (x - p.mvf[j - 1]) / (p.mvf[j] - p.mvf[j - 1]);
            return p.t[j - 1] + w * (p.t[j] - p.t[j - 1]);
          },
      },
      family_);
}

double FirstArrivalLaw::survival(double t) const { return std::exp(-mvf(t)); }

std::string FirstArrivalLaw::describe() const {
  return std::visit(
      Overloaded{
          [](const Exponential& e) { return "exp:rate=" + format_number(e.rate); },
          [](const Weibull& w) {
            return "weibull:shape=" + format_number(w.shape) + ",scale=" + format_number(w.scale);
          },
          [](const LinearHazard& l) {
            return "linhaz:a=" + format_number(l.a) + ",b=" + format_number(l.b);
          },
          [](const PiecewiseMvf& p) { return "mvf:knots=" + std::to_string(p.t.size()); },
      },
      family_);
}

FirstArrivalLaw parse_law(std::string_view spec) {
  const auto [name, params] = split_spec(spec);
  if (name == "exp") {
    reject_unknown(params, {"rate"}, spec);
    return FirstArrivalLaw::exponential(number_param(params, "rate", spec));
  }
  if (name == "weibull") {
    reject_unknown(params, {"shape", "scale"}, spec);
    return FirstArrivalLaw::weibull(number_param(params, "shape", spec),
                                    number_param(params, "scale", spec));
  }
  if (name == "linhaz") {
    reject_unknown(params, {"a", "b"}, spec);
    return FirstArrivalLaw::linear_hazard(number_param(params, "a", spec),
                                          number_param(params, "b", spec));
  }
  if (name == "mvf") {
    reject_unknown(params, {"file"}, spec);
    auto it = params.find("file");
    if (it == params.end()) throw ValidationError("mvf law needs file=<path>");
    std::ifstream in(it->second);
    if (!in) throw ValidationError("cannot open mean value function file '" + it->second + "'");
    std::vector<double> t, mvf;
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream row(line);
      double a = 0, b = 0;
      if (!(row >> a >> b)) {
        if (t.empty() && line.find_first_of("0123456789") == std::string::npos) continue;  // header
        throw ParseError(line_no, "expected 't,Lambda'");
      }
      t.push_back(a);
      mvf.push_back(b);
    }
    return FirstArrivalLaw::piecewise(std::move(t), std::move(mvf));
  }
  throw ValidationError("unknown law '" + name + "' (expected exp, weibull, linhaz or mvf)");
}

// -- DamageModel ------------------------------------------------------------

DamageModel DamageModel::binomial(double p) {
  if (!(p > 0) || !(p <= 1)) throw ValidationError("binomial damage needs 0 < p <= 1");
  return DamageModel(BinomialDamage{p, 1 - p});
}

std::string DamageModel::describe() const {
  return std::visit(Overloaded{
                        [](const BinomialDamage& b) { return "binomial:p=" + format_number(b.p); },
                        [](const OnePerShock&) { return std::string("one-per-shock"); },
                        [](const FatalDamage&) { return std::string("fatal"); },
                    },
                    v_);
}

DamageModel parse_damage(std::string_view spec) {
  const auto [name, params] = split_spec(spec);
  if (name == "binomial") {
    reject_unknown(params, {"p"}, spec);
    return DamageModel::binomial(number_param(params, "p", spec));
  }
  if (!params.empty()) throw ValidationError("damage '" + name + "' takes no parameters");
  if (name == "one-per-shock") return DamageModel::one_per_shock();
  if (name == "fatal") return DamageModel::fatal();
  throw ValidationError("unknown damage model '" + name + "' (expected binomial, one-per-shock or fatal)");
}

// -- Poisson counts ---------------------------------------------------------

double poisson_pmf(double mean, std::size_t k) {
  if (mean < 0 || !std::isfinite(mean)) throw ValidationError("Poisson mean must be finite and >= 0");
  if (mean == 0) return k == 0 ? 1.0 : 0.0;
  if (mean <= 30 && k <= 200) {
    double term = std::exp(-mean);
    for (std::size_t x = 1; x <= k; ++x) term *= mean / static_cast<double>(x);
    return term;
  }
  return std::exp(log_poisson_pmf(mean, k));
}

std::vector<double> poisson_pmf_table(double mean, std::size_t kmax) {
  if (mean < 0 || !std::isfinite(mean)) throw ValidationError("Poisson mean must be finite and >= 0");
  std::vector<double> pmf(kmax + 1, 0.0);
  if (mean == 0) {
    pmf[0] = 1;
    return pmf;
  }
  std::size_t anchor = 0;
  if (mean <= 30) {
    pmf[0] = std::exp(-mean);
  } else {
    anchor = std::min(kmax, static_cast<std::size_t>(mean));
    pmf[anchor] = std::exp(log_poisson_pmf(mean, anchor));
  }
  for (std::size_t k = anchor + 1; k <= kmax; ++k)
    pmf[k] = pmf[k - 1] * mean / static_cast<double>(k);
  for (std::size_t k = anchor; k-- > 0;) pmf[k] = pmf[k + 1] * static_cast<double>(k + 1) / mean;
  return pmf;
}

std::size_t truncation_index(double mean, double tolerance) {
  if (mean < 0 || !std::isfinite(mean)) throw ValidationError("Poisson mean must be finite and >= 0");
  if (mean == 0) return 0;
  auto K = static_cast<std::size_t>(mean);
  for (;; ++K) {
    const double next = static_cast<double>(K + 2);
    if (next <= mean) continue;
    const double bound = std::exp(log_poisson_pmf(mean, K + 1)) / (1 - mean / next);
    if (bound < tolerance) return K;
  }
}

double count_pmf(const FirstArrivalLaw& law, double t, std::size_t k) {
  if (t < 0) throw ValidationError("time must be >= 0");
  return poisson_pmf(law.mvf(t), k);
}

double arrival_survival(const FirstArrivalLaw& law, double t, std::size_t k) {
  if (k == 0) throw ValidationError("arrival index must be >= 1");
  if (t < 0) throw ValidationError("time must be >= 0");
  const auto pmf = poisson_pmf_table(law.mvf(t), k - 1);
  double s = 0;
  for (double p : pmf) s += p;
  return std::min(1.0, s);
}

// -- Damage coefficients ----------------------------------------------------

double cumulative_damage_pmf(std::size_t n, double q, std::size_t k, std::size_t j) {
  if (j > n) throw ValidationError("failed count j must be in 0..n");
  if (!(q >= 0 && q <= 1)) throw ValidationError("q must lie in [0, 1]");
  // Each link survives k shocks independently with probability q^k.
  const double survive = std::pow(q, static_cast<double>(k));
  const double fail = q > 0 ? -std::expm1(static_cast<double>(k) * std::log(q)) : 1.0;
  double choose = 1;
  for (std::size_t i = 1; i <= j; ++i)
    choose = choose * static_cast<double>(n - j + i) / static_cast<double>(i);
  return choose * std::pow(fail, static_cast<double>(j)) *
         std::pow(survive, static_cast<double>(n - j));
}

double beta_star(const TailVector& tail, double q, std::size_t k) {
  if (k == 0) return 1;
  const std::size_t n = tail.size();
  const auto sbar = tail.as_doubles();
  double total = 0;
  for (std::size_t j = 0; j < n; ++j) total += sbar[j] * cumulative_damage_pmf(n, q, k, j);
  return total;
}

double beta_star_incomplete_beta(const SignatureVector& sig, double q, std::size_t k) {
  if (!(q >= 0 && q <= 1)) throw ValidationError("q must lie in [0, 1]");
  const std::size_t n = sig.size();
  const auto s = sig.as_doubles();
  const double x = std::pow(q, static_cast<double>(k));
  double total = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    if (s[j - 1] == 0) continue;
    // integral_{1-x}^{1} of the Beta(j, n-j+1) density = I_x(n-j+1, j).
    const double mass =
        x <= 0 ? 0.0
               : (x >= 1 ? 1.0
                         : boost::math::ibeta(static_cast<double>(n - j + 1),
                                              static_cast<double>(j), x));
    total += s[j - 1] * mass;
  }
  return total;
}

double beta_general(const TailVector& tail, const DamageModel& damage, std::size_t k) {
  return std::visit(Overloaded{
                        [&](const BinomialDamage& b) { return beta_star(tail, b.q, k); },
                        [&](const OnePerShock&) {
                          return k < tail.size() ? to_double(tail.values[k]) : 0.0;
                        },
                        [&](const FatalDamage&) -> double {
                          throw ValidationError(
                              "fatal shocks use the fatal signature, not beta coefficients");
                        },
                    },
                    damage.variant());
}

BetaSequence make_beta_sequence(const TailVector& tail, const DamageModel& damage, std::size_t K) {
  BetaSequence beta;
  beta.values.reserve(K + 1);
  for (std::size_t k = 0; k <= K; ++k) beta.values.push_back(beta_general(tail, damage, k));
  beta.truncation_index = K;
  beta.tail_bound = beta.values.back();
  return beta;
}

StSignature st_signature(const BetaSequence& beta) {
  if (beta.values.empty() || beta.values.front() != 1.0)
    throw ValidationError("beta sequence must start with beta_0 = 1");
  StSignature st;
  for (std::size_t k = 1; k < beta.values.size(); ++k) {
    const double diff = beta.values[k - 1] - beta.values[k];
    if (diff < -1e-14 || beta.values[k] < 0)
      throw ValidationError("beta sequence is not non-increasing at k=" + std::to_string(k));
    st.probabilities.push_back(std::max(0.0, diff));
  }
  st.tail = beta.values.back();
  return st;
}

}  // namespace shocknet
