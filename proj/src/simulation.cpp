#include "shocknet/simulation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "shocknet/errors.hpp"
#include "shocknet/kernels.hpp"

namespace shocknet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class ArrivalStream {
 public:
  explicit ArrivalStream(const FirstArrivalLaw& law) : law_(law) {}

  double next(Rng& rng) {
    cumulative_ += std::exponential_distribution<double>(1.0)(rng);
    return law_.inverse_mvf(cumulative_);
  }

 private:
  const FirstArrivalLaw& law_;
  double cumulative_ = 0;
};

std::size_t draw_index(const std::vector<double>& probs, Rng& rng) {
  return std::discrete_distribution<std::size_t>(probs.begin(), probs.end())(rng) + 1;
}

}  // namespace

std::string_view to_string(SimMode mode) {
  return mode == SimMode::model_faithful ? "model-faithful" : "mechanistic";
}

SimMode parse_sim_mode(std::string_view name) {
  if (name == "model-faithful" || name == "model_faithful") return SimMode::model_faithful;
  if (name == "mechanistic") return SimMode::mechanistic;
  throw ValidationError("unknown simulation mode '" + std::string(name) + "'");
}

std::string SimConfig::describe() const {
  std::ostringstream out;
  out << "mode=" << to_string(mode) << " law=" << law.describe() << " damage=" << damage.describe()
      << " trials=" << trials << " seed=" << seed;
  if (network) out << " links=" << network->link_count();
  if (signature) out << " signature=" << to_string(signature->kind);
  return out.str();
}

std::vector<double> sample_nhpp_arrivals(const FirstArrivalLaw& law, double horizon, Rng& rng) {
  if (!(horizon > 0)) throw ValidationError("arrival horizon must be > 0");
  std::vector<double> times;
  ArrivalStream stream(law);
  for (;;) {
    const double t = stream.next(rng);
    if (!(t <= horizon)) return times;
    times.push_back(t);
  }
}

LifetimeSimulator::LifetimeSimulator(const SimConfig& cfg) : cfg_(cfg) {
  if (cfg.trials == 0) throw ValidationError("trials must be at least 1");
  if (cfg.mode == SimMode::mechanistic) {
    if (!cfg.network) throw ValidationError("mechanistic simulation needs a network");
    if (cfg.damage.is_fatal())
      throw ValidationError("mechanistic simulation supports binomial or one-per-shock damage");
    structure_.emplace(*cfg.network);
    detail::require_up_when_intact(*structure_);
    n_ = cfg.network->link_count();
    return;
  }

  const SignatureKind wanted = cfg.damage.is_fatal() ? SignatureKind::fatal : SignatureKind::tie;
  SignatureVector sig;
  if (cfg.signature) {
    sig = *cfg.signature;
  } else if (cfg.network) {
    sig = wanted == SignatureKind::fatal ? fatal_signature(*cfg.network) : t_signature(*cfg.network);
  } else {
    throw ValidationError("model-faithful simulation needs a signature or a network");
  }
  if (sig.kind != wanted)
    throw ValidationError("model-faithful simulation with " + cfg.damage.describe() + " damage needs a " +
                          std::string(to_string(wanted)) + " signature");
  validate(sig);
  signature_ = sig.as_doubles();
  n_ = signature_.size();
}

double LifetimeSimulator::operator()(Rng& rng) const {
  return cfg_.mode == SimMode::mechanistic ? mechanistic(rng) : model_faithful(rng);
}

double LifetimeSimulator::model_faithful(Rng& rng) const {
  const std::size_t index = draw_index(signature_, rng);
  ArrivalStream arrivals(cfg_.law);
  const auto& damage = cfg_.damage.variant();

  if (!std::holds_alternative<BinomialDamage>(damage)) {
    // One failure per shock dies at arrival M; fatal shocks at the drawn killing index.
    double t = 0;
    for (std::size_t k = 0; k < index; ++k) t = arrivals.next(rng);
    return t;
  }

  const double p = std::get<BinomialDamage>(damage).p;
  std::size_t failed = 0;
  for (;;) {
    const double t = arrivals.next(rng);
    if (std::isinf(t)) return kInf;
    const auto survivors = static_cast<int>(n_ - failed);
    failed += static_cast<std::size_t>(std::binomial_distribution<int>(survivors, p)(rng));
    if (failed >= index) return t;
  }
}

double LifetimeSimulator::mechanistic(Rng& rng) const {
  ArrivalStream arrivals(cfg_.law);
  const bool binomial = cfg_.damage.is_binomial();
  const double p = binomial ? cfg_.damage.binomial_params().p : 0;
  LinkMask failed = 0;
  for (;;) {
    const double t = arrivals.next(rng);
    if (std::isinf(t)) return kInf;
    const LinkMask alive = structure_->full_mask() & ~failed;
    if (binomial) {
      std::bernoulli_distribution hit(p);
      for (LinkMask m = alive; m; m &= m - 1)
        if (hit(rng)) failed |= m & (~m + 1);
    } else {
      auto pick = std::uniform_int_distribution<int>(0, std::popcount(alive) - 1)(rng);
      LinkMask m = alive;
      for (; pick > 0; --pick) m &= m - 1;
      failed |= m & (~m + 1);
    }
    if (structure_->cut(failed)) return t;
  }
}

double simulate_lifetime(const SimConfig& cfg, Rng& rng) { return LifetimeSimulator(cfg)(rng); }

ReliabilityCurve mc_reliability_curve(const SimConfig& cfg, std::span<const double> grid) {
  validate_grid(grid);
  const LifetimeSimulator sim(cfg);
  auto lifetimes = parallel::simulate_lifetimes(sim, cfg.trials, cfg.seed);
  std::sort(lifetimes.begin(), lifetimes.end());

  ReliabilityCurve curve;
  curve.grid.assign(grid.begin(), grid.end());
  const auto trials = static_cast<double>(cfg.trials);
  for (double t : grid) {
    const auto dead = std::upper_bound(lifetimes.begin(), lifetimes.end(), t) - lifetimes.begin();
    const double r = (trials - static_cast<double>(dead)) / trials;
    curve.values.push_back(r);
    curve.standard_error.push_back(std::sqrt(r * (1 - r) / trials));
  }
  return curve;
}

}  // namespace shocknet
